#include "bootperc/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bootperc {

namespace {

constexpr std::uint64_t kStateOrderGuard = 1ULL << 26;

// Threshold for entering the next round as a real number; count is compared
// with ceil(t - 1e-9), and t <= 0 infects unconditionally.
double round_threshold(const ProcessSpec& spec, int degree, std::int64_t round,
                       double gamma_of_degree) {
    switch (spec.variant) {
        case ProcessSpec::Variant::RNeighbour:
            return static_cast<double>(spec.r);
        case ProcessSpec::Variant::Majority:
            return static_cast<double>(degree) / 2.0 + static_cast<double>(spec.m);
        case ProcessSpec::Variant::Boot: {
            const double slack =
                static_cast<double>(std::max<std::int64_t>(0, spec.k - round)) * spec.gamma_scale;
            return static_cast<double>(degree) / 2.0 - slack * gamma_of_degree;
        }
    }
    return 0.0;
}

}  // namespace

double sigma(int d) {
    if (d < 2) throw std::invalid_argument("sigma needs degree >= 2");
    return std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(d));
}

double gamma_slack(int d) {
    if (d < 2) throw std::invalid_argument("gamma needs degree >= 2");
    return std::sqrt(static_cast<double>(d) / std::sqrt(std::log(static_cast<double>(d))));
}

InfectionState::InfectionState(const GraphFamily& graph, const std::vector<std::uint64_t>& initial_bits)
    : graph_(&graph), order_(graph.order()) {
    if (order_ > kStateOrderGuard) {
        throw BudgetExceededError("graph order exceeds the infection state budget (2^26)");
    }
    if (graph.max_degree() > 0xffff) {
        throw BudgetExceededError("degrees exceed 16-bit infected-neighbour counters");
    }
    const std::size_t words = static_cast<std::size_t>((order_ + 63) / 64);
    if (initial_bits.size() != words) {
        throw std::invalid_argument("initial bitset has the wrong number of words");
    }
    bits_ = initial_bits;
    if (order_ % 64 != 0) bits_.back() &= (1ULL << (order_ % 64)) - 1;

    infection_round_.assign(static_cast<std::size_t>(order_), -1);
    counts_.assign(static_cast<std::size_t>(order_), 0);
    degrees_.resize(static_cast<std::size_t>(order_));
    tested_stamp_.assign(static_cast<std::size_t>(order_), 0);

    std::vector<VertexId> nb;
    for (std::uint64_t i = 0; i < order_; ++i) {
        const VertexId v = graph.vertex_at(i);
        degrees_[i] = static_cast<std::uint16_t>(graph.degree(v));
        if (infected_index(i)) {
            infection_round_[i] = 0;
            frontier_.push_back(static_cast<std::uint32_t>(i));
            ++infected_count_;
            nb.clear();
            graph.append_neighbours(v, nb);
            for (VertexId w : nb) ++counts_[graph.index_of(w)];
        }
    }
}

InfectionState InfectionState::from_vertices(const GraphFamily& graph,
                                             const std::vector<VertexId>& initial) {
    const std::uint64_t order = graph.order();
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((order + 63) / 64), 0);
    for (VertexId v : initial) {
        const std::uint64_t i = graph.index_of(v);
        bits[i >> 6] |= (1ULL << (i & 63));
    }
    return InfectionState(graph, bits);
}

void InfectionState::infect(std::uint64_t index) {
    bits_[index >> 6] |= (1ULL << (index & 63));
    ++infected_count_;
}

InfectionState step(const GraphFamily& graph, const ProcessSpec& spec, InfectionState state) {
    const std::uint64_t order = state.order_;
    const std::int64_t round = state.round_;

    // Rounds whose threshold can change or reach zero must re-test every
    // uninfected vertex; otherwise only neighbours of the frontier can newly
    // qualify.
    bool full_scan = false;
    if (spec.variant == ProcessSpec::Variant::Boot && round < spec.k) full_scan = true;
    if (spec.variant == ProcessSpec::Variant::RNeighbour && spec.r <= 0) full_scan = true;
    if (graph.min_degree() == 0) full_scan = true;

    std::vector<std::uint32_t> newly;
    auto qualifies = [&](std::uint64_t i) {
        const int d = state.degrees_[i];
        if (spec.variant == ProcessSpec::Variant::Majority) {
            // Exact integer arithmetic: 2*count >= d + 2m (or > in strict mode).
            const std::int64_t lhs = 2LL * state.counts_[i];
            const std::int64_t rhs = static_cast<std::int64_t>(d) + 2LL * spec.m;
            return spec.strict_majority ? lhs > rhs : lhs >= rhs;
        }
        // The slack function is undefined below degree 2; such vertices get
        // the bare majority threshold.
        const double gamma_v =
            (spec.variant == ProcessSpec::Variant::Boot && d >= 2) ? gamma_slack(d) : 0.0;
        const double t = round_threshold(spec, d, round, gamma_v);
        if (t <= 0.0) return true;
        const auto needed = static_cast<std::int64_t>(std::ceil(t - 1e-9));
        return static_cast<std::int64_t>(state.counts_[i]) >= needed;
    };

    if (full_scan) {
        for (std::uint64_t i = 0; i < order; ++i) {
            if (!state.infected_index(i) && qualifies(i)) {
                newly.push_back(static_cast<std::uint32_t>(i));
            }
        }
    } else {
        const auto stamp = static_cast<std::uint32_t>(round + 1);
        std::vector<VertexId> nb;
        for (std::uint32_t f : state.frontier_) {
            nb.clear();
            graph.append_neighbours(graph.vertex_at(f), nb);
            for (VertexId w : nb) {
                const std::uint64_t i = graph.index_of(w);
                if (state.infected_index(i) || state.tested_stamp_[i] == stamp) continue;
                state.tested_stamp_[i] = stamp;
                if (qualifies(i)) newly.push_back(static_cast<std::uint32_t>(i));
            }
        }
        std::sort(newly.begin(), newly.end());
    }

    ++state.round_;
    std::vector<VertexId> nb;
    for (std::uint32_t i : newly) {
        state.infect(i);
        state.infection_round_[i] = static_cast<std::int32_t>(state.round_);
    }
    // Scatter after all infections so counts reflect the new set exactly.
    for (std::uint32_t i : newly) {
        nb.clear();
        graph.append_neighbours(graph.vertex_at(i), nb);
        for (VertexId w : nb) ++state.counts_[graph.index_of(w)];
    }
    state.frontier_ = std::move(newly);
    return state;
}

Trace run(const GraphFamily& graph, const ProcessSpec& spec, InfectionState state) {
    std::uint64_t max_rounds = spec.max_rounds;
    if (max_rounds == 0) {
        max_rounds = graph.order();
        if (spec.variant == ProcessSpec::Variant::Boot) {
            max_rounds += static_cast<std::uint64_t>(std::max(spec.k, 0));
        }
    }

    Trace trace;
    // Round 0 always takes a step even with an empty frontier: nonpositive
    // thresholds (zero-threshold processes, isolated vertices, loosened
    // rounds) can infect without any infected neighbour. Beyond that, an
    // empty frontier with settled thresholds is a fixpoint.
    while (!state.all_infected()) {
        const bool thresholds_settled =
            spec.variant != ProcessSpec::Variant::Boot || state.round() >= spec.k;
        if (state.frontier().empty() && state.round() >= 1 && thresholds_settled) break;
        if (static_cast<std::uint64_t>(state.round()) >= max_rounds) {
            trace.truncated = true;
            break;
        }
        state = step(graph, spec, std::move(state));
    }

    trace.percolated = state.all_infected();
    trace.final_count = state.infected_count();
    trace.final_bits = state.bits();
    trace.infection_round = state.infection_round();
    std::int64_t last = 0;
    for (std::int32_t r : trace.infection_round) last = std::max<std::int64_t>(last, r);
    trace.rounds_to_stabilize = last;
    return trace;
}

Trace run(const GraphFamily& graph, const ProcessSpec& spec, const std::vector<VertexId>& initial) {
    return run(graph, spec, InfectionState::from_vertices(graph, initial));
}

}  // namespace bootperc
