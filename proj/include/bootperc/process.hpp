// Synchronous infection dynamics: constant-threshold, majority with offset,
// and the dominating process with round-dependent loosened thresholds.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bootperc/graph.hpp"

namespace bootperc {

// sqrt(ln d / d); the second-order term of the critical probability is
// -sigma/2. Natural logarithm throughout.
double sigma(int d);

// sqrt(d / sqrt(ln d)): the slack of the dominating process.
double gamma_slack(int d);

struct ProcessSpec {
    enum class Variant { RNeighbour, Majority, Boot };

    Variant variant = Variant::Majority;
    int r = 0;                 // RNeighbour: constant threshold
    int m = 0;                 // Majority: threshold d(v)/2 + m
    int k = 0;                 // Boot: rounds with loosened thresholds
    double gamma_scale = 1.0;  // Boot: multiplier on the slack term
    // Strict mode uses count > d(v)/2 + m instead of >=. No default result
    // depends on it.
    bool strict_majority = false;
    // 0 means "choose at run time": order of the graph (+k for Boot).
    std::uint64_t max_rounds = 0;

    static ProcessSpec rneighbour(int r) {
        ProcessSpec s;
        s.variant = Variant::RNeighbour;
        s.r = r;
        return s;
    }
    static ProcessSpec majority(int m = 0) {
        ProcessSpec s;
        s.variant = Variant::Majority;
        s.m = m;
        return s;
    }
    static ProcessSpec boot(int k, double gamma_scale = 1.0) {
        ProcessSpec s;
        s.variant = Variant::Boot;
        s.k = k;
        s.gamma_scale = gamma_scale;
        return s;
    }
};

// Bit-packed infected set with the bookkeeping the frontier-driven update
// needs: per-vertex infected-neighbour counts and infection rounds.
class InfectionState {
public:
    InfectionState(const GraphFamily& graph, const std::vector<std::uint64_t>& initial_bits);
    static InfectionState from_vertices(const GraphFamily& graph,
                                        const std::vector<VertexId>& initial);

    std::uint64_t order() const { return order_; }
    std::int64_t round() const { return round_; }
    bool infected_index(std::uint64_t index) const {
        return (bits_[index >> 6] >> (index & 63)) & 1ULL;
    }
    std::uint64_t infected_count() const { return infected_count_; }
    bool all_infected() const { return infected_count_ == order_; }
    const std::vector<std::uint32_t>& frontier() const { return frontier_; }
    const std::vector<std::int32_t>& infection_round() const { return infection_round_; }
    const std::vector<std::uint64_t>& bits() const { return bits_; }

private:
    friend InfectionState step(const GraphFamily& graph, const ProcessSpec& spec,
                               InfectionState state);

    void infect(std::uint64_t index);

    const GraphFamily* graph_;
    std::uint64_t order_;
    std::int64_t round_ = 0;
    std::uint64_t infected_count_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> frontier_;       // vertices infected in the latest round
    std::vector<std::int32_t> infection_round_; // -1 = never infected
    std::vector<std::uint16_t> counts_;         // infected-neighbour counts
    std::vector<std::uint16_t> degrees_;
    std::vector<std::uint32_t> tested_stamp_;   // round tag for candidate dedup
};

struct Trace {
    bool percolated = false;
    // Last round in which a vertex was infected (0 when the initial set is
    // already a fixpoint).
    std::int64_t rounds_to_stabilize = 0;
    std::uint64_t final_count = 0;
    std::vector<std::uint64_t> final_bits;
    std::vector<std::int32_t> infection_round;
    // Set when max_rounds was hit before a fixpoint.
    bool truncated = false;
};

// One synchronous update: infects exactly the vertices whose infected
// neighbour count meets the round's threshold.
InfectionState step(const GraphFamily& graph, const ProcessSpec& spec, InfectionState state);

// Iterates step until a fixpoint (for the Boot variant: empty frontier with
// round >= k) or until max_rounds, whichever first.
Trace run(const GraphFamily& graph, const ProcessSpec& spec, const std::vector<VertexId>& initial);
Trace run(const GraphFamily& graph, const ProcessSpec& spec, InfectionState state);

}  // namespace bootperc
