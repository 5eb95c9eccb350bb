// Ground-truth brute-force computations on small graphs: exact percolation
// probabilities by full subset enumeration, exact critical probabilities,
// all-pairs distances, and the synchronous/asynchronous closure cross-check.
// Order guards fail loudly; the oracle never approximates.
#pragma once

#include <cstdint>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/process.hpp"

namespace bootperc {

// Percolation indicator for every subset of V(G), |V| <= 20. The table is
// built once and reused bit-exactly across p values.
class ExactPhi {
public:
    ExactPhi(const GraphFamily& graph, const ProcessSpec& spec);

    // Phi(p) = sum over subsets S of p^|S| (1-p)^(|V|-|S|) * indicator(S).
    double at(double p) const;
    bool indicator(std::uint32_t subset_bits) const { return table_[subset_bits]; }
    int order() const { return n_; }

private:
    int n_;
    std::vector<bool> table_;
};

double exact_phi(const GraphFamily& graph, const ProcessSpec& spec, double p);

// inf{p : Phi(p) >= 1/2} by bisection on the exact curve.
double exact_pc(const GraphFamily& graph, const ProcessSpec& spec, double tol = 1e-9);

// True iff the synchronous closure equals the closure under random
// single-vertex updates drawn from `seed`. Standard and majority variants
// only; |V| <= 2^10.
bool closure_async_equiv(const GraphFamily& graph, const ProcessSpec& spec,
                         const std::vector<VertexId>& initial, std::uint64_t seed);

// All-pairs BFS distances, |V| <= 2^12, indexed by enumeration index.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const GraphFamily& graph);

    std::uint64_t order() const { return order_; }
    int at(std::uint64_t i, std::uint64_t j) const {
        return data_[static_cast<std::size_t>(i * order_ + j)];
    }
    int max_entry() const;

private:
    std::uint64_t order_;
    std::vector<std::int16_t> data_;
};

}  // namespace bootperc
