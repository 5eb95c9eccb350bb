#include "bootperc/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bootperc {

namespace {

constexpr int kExactPhiGuard = 20;
constexpr std::uint64_t kAsyncGuard = 1ULL << 10;
constexpr std::uint64_t kMatrixGuard = 1ULL << 12;

std::vector<VertexId> subset_to_vertices(const GraphFamily& graph, std::uint32_t subset_bits) {
    std::vector<VertexId> vs;
    for (int i = 0; subset_bits != 0; ++i, subset_bits >>= 1) {
        if (subset_bits & 1U) vs.push_back(graph.vertex_at(static_cast<std::uint64_t>(i)));
    }
    return vs;
}

}  // namespace

ExactPhi::ExactPhi(const GraphFamily& graph, const ProcessSpec& spec) {
    if (graph.order() > kExactPhiGuard) {
        throw OrderGuardError("exact percolation table needs |V| <= 20");
    }
    n_ = static_cast<int>(graph.order());
    const std::uint32_t subsets = 1U << n_;
    table_.resize(subsets);
    for (std::uint32_t s = 0; s < subsets; ++s) {
        table_[s] = run(graph, spec, subset_to_vertices(graph, s)).percolated;
    }
}

double ExactPhi::at(double p) const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
    // Per-popcount weights cover every subset probability.
    std::vector<double> pw(static_cast<std::size_t>(n_) + 1), qw(static_cast<std::size_t>(n_) + 1);
    pw[0] = qw[0] = 1.0;
    for (int i = 1; i <= n_; ++i) {
        pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * p;
        qw[static_cast<std::size_t>(i)] = qw[static_cast<std::size_t>(i - 1)] * (1.0 - p);
    }
    double phi = 0.0;
    const std::uint32_t subsets = 1U << n_;
    for (std::uint32_t s = 0; s < subsets; ++s) {
        if (!table_[s]) continue;
        const int k = std::popcount(s);
        phi += pw[static_cast<std::size_t>(k)] * qw[static_cast<std::size_t>(n_ - k)];
    }
    return phi;
}

double exact_phi(const GraphFamily& graph, const ProcessSpec& spec, double p) {
    return ExactPhi(graph, spec).at(p);
}

double exact_pc(const GraphFamily& graph, const ProcessSpec& spec, double tol) {
    const ExactPhi phi(graph, spec);
    if (phi.at(0.0) >= 0.5) return 0.0;
    double lo = 0.0, hi = 1.0;  // Phi(1) = 1 >= 1/2 always
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (phi.at(mid) >= 0.5) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool closure_async_equiv(const GraphFamily& graph, const ProcessSpec& spec,
                         const std::vector<VertexId>& initial, std::uint64_t seed) {
    if (graph.order() > kAsyncGuard) {
        throw OrderGuardError("asynchronous closure check needs |V| <= 2^10");
    }
    if (spec.variant == ProcessSpec::Variant::Boot) {
        throw std::invalid_argument("asynchronous closure equivalence holds only for "
                                    "round-independent thresholds");
    }
    const Trace sync = run(graph, spec, initial);

    // Asynchronous closure: sweep a reshuffled vertex order, infecting one
    // vertex at a time, until a full sweep changes nothing.
    const auto order = graph.order();
    std::vector<bool> infected(static_cast<std::size_t>(order), false);
    for (VertexId v : initial) infected[static_cast<std::size_t>(graph.index_of(v))] = true;

    std::vector<std::uint64_t> perm(static_cast<std::size_t>(order));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);

    std::vector<VertexId> nb;
    bool changed = true;
    while (changed) {
        changed = false;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::uint64_t i : perm) {
            if (infected[static_cast<std::size_t>(i)]) continue;
            const VertexId v = graph.vertex_at(i);
            nb.clear();
            graph.append_neighbours(v, nb);
            int count = 0;
            for (VertexId w : nb) {
                if (infected[static_cast<std::size_t>(graph.index_of(w))]) ++count;
            }
            const int d = graph.degree(v);
            bool infect;
            if (spec.variant == ProcessSpec::Variant::RNeighbour) {
                infect = count >= spec.r;
            } else {
                infect = spec.strict_majority ? 2LL * count > d + 2LL * spec.m
                                              : 2LL * count >= d + 2LL * spec.m;
            }
            if (infect) {
                infected[static_cast<std::size_t>(i)] = true;
                changed = true;
            }
        }
    }

    for (std::uint64_t i = 0; i < order; ++i) {
        const bool sync_in = (sync.final_bits[i >> 6] >> (i & 63)) & 1ULL;
        if (sync_in != infected[static_cast<std::size_t>(i)]) return false;
    }
    return true;
}

DistanceMatrix::DistanceMatrix(const GraphFamily& graph) : order_(graph.order()) {
    if (order_ > kMatrixGuard) throw OrderGuardError("distance matrix needs |V| <= 2^12");
    data_.assign(static_cast<std::size_t>(order_ * order_), -1);
    std::vector<VertexId> nb;
    std::vector<std::uint64_t> frontier, next;
    for (std::uint64_t s = 0; s < order_; ++s) {
        auto* row = &data_[static_cast<std::size_t>(s * order_)];
        row[s] = 0;
        frontier.assign(1, s);
        for (std::int16_t d = 1; !frontier.empty(); ++d) {
            next.clear();
            for (std::uint64_t v : frontier) {
                nb.clear();
                graph.append_neighbours(graph.vertex_at(v), nb);
                for (VertexId w : nb) {
                    const std::uint64_t j = graph.index_of(w);
                    if (row[j] < 0) {
                        row[j] = d;
                        next.push_back(j);
                    }
                }
            }
            frontier.swap(next);
        }
    }
}

int DistanceMatrix::max_entry() const {
    int m = 0;
    for (std::int16_t d : data_) m = std::max<int>(m, d);
    return m;
}

}  // namespace bootperc
