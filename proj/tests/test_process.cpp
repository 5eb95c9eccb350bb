#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "bootperc/families.hpp"
#include "bootperc/process.hpp"
#include "oracle_helpers.hpp"

using namespace bootperc;

namespace {

std::set<VertexId> final_set(const GraphFamily& graph, const Trace& trace) {
    std::set<VertexId> out;
    for (std::uint64_t i = 0; i < graph.order(); ++i) {
        if ((trace.final_bits[i >> 6] >> (i & 63)) & 1ULL) out.insert(graph.vertex_at(i));
    }
    return out;
}

std::vector<VertexId> random_subset(const GraphFamily& graph, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<VertexId> out;
    for (std::uint64_t i = 0; i < graph.order(); ++i) {
        if (unif(rng) < p) out.push_back(graph.vertex_at(i));
    }
    return out;
}

// Round-by-round domination: every vertex of the dominated process is
// infected no later than in the dominating one.
bool dominates(const Trace& stronger, const Trace& weaker) {
    for (std::size_t i = 0; i < weaker.infection_round.size(); ++i) {
        const std::int32_t rw = weaker.infection_round[i];
        const std::int32_t rs = stronger.infection_round[i];
        if (rw >= 0 && (rs < 0 || rs > rw)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sigma matches high-precision evaluation") {
    CHECK(sigma(100) == doctest::Approx(0.2145966026289347).epsilon(1e-12));
    CHECK(sigma(2) == doctest::Approx(0.5887050112577373).epsilon(1e-12));
    CHECK(sigma(16) > sigma(64));  // decreasing beyond e
    CHECK_THROWS(sigma(1));
}

TEST_CASE("gamma slack matches high-precision evaluation") {
    CHECK(gamma_slack(256) == doctest::Approx(10.4265617744713).epsilon(1e-12));
    CHECK(gamma_slack(8) == doctest::Approx(2.3553655275435).epsilon(1e-12));
    CHECK_THROWS(gamma_slack(1));
    for (int d : {2, 5, 37, 1000}) {
        const double dd = d;
        CHECK(gamma_slack(d) * std::pow(std::log(dd), 0.25) / std::sqrt(dd) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("one majority step on the 4-cycle") {
    HypercubeFamily cube(2);
    auto state = InfectionState::from_vertices(cube, {0b00});
    state = step(cube, ProcessSpec::majority(0), std::move(state));
    CHECK(state.round() == 1);
    std::set<VertexId> infected;
    for (std::uint64_t i = 0; i < 4; ++i) {
        if (state.infected_index(i)) infected.insert(i);
    }
    CHECK(infected == std::set<VertexId>{0b00, 0b01, 0b10});
}

TEST_CASE("a fully infected state is a fixpoint") {
    HypercubeFamily cube(3);
    std::vector<VertexId> all;
    for (std::uint64_t i = 0; i < 8; ++i) all.push_back(i);
    auto state = InfectionState::from_vertices(cube, all);
    state = step(cube, ProcessSpec::majority(0), std::move(state));
    CHECK(state.frontier().empty());
    CHECK(state.all_infected());
}

TEST_CASE("loosened first-round threshold can infect everything from nothing") {
    HypercubeFamily cube(8);  // degree 8: threshold 4 - 2*gamma(8) < 0
    auto state = InfectionState::from_vertices(cube, {});
    state = step(cube, ProcessSpec::boot(2), std::move(state));
    CHECK(state.all_infected());
}

TEST_CASE("majority percolation from one corner of the 4-cycle") {
    HypercubeFamily cube(2);
    const Trace trace = run(cube, ProcessSpec::majority(0), std::vector<VertexId>{0b00});
    CHECK(trace.percolated);
    CHECK(trace.rounds_to_stabilize == 2);
    CHECK(!trace.truncated);
}

TEST_CASE("the empty set is a fixpoint on an edge") {
    HypercubeFamily cube(1);
    const Trace trace = run(cube, ProcessSpec::majority(0), std::vector<VertexId>{});
    CHECK(!trace.percolated);
    CHECK(trace.final_count == 0);
    CHECK(trace.rounds_to_stabilize == 0);
}

TEST_CASE("two antipodal seeds percolate K4 in one round") {
    FoldedFamily folded(3);
    const Trace trace = run(folded, ProcessSpec::majority(0), std::vector<VertexId>{0b00, 0b11});
    CHECK(trace.percolated);
    CHECK(trace.rounds_to_stabilize == 1);
}

TEST_CASE("zero-threshold process infects everything at once") {
    OddFamily odd(3);
    const Trace trace = run(odd, ProcessSpec::rneighbour(0), std::vector<VertexId>{});
    CHECK(trace.percolated);
    CHECK(trace.rounds_to_stabilize == 1);
}

TEST_CASE("max_rounds exhaustion is reported, not silently truncated") {
    // A path percolates corner-to-corner slowly under threshold 1.
    FamilySpec spec{FamilySpec::Kind::Grid, 0, 0, {16}, {}, {}, 1};
    auto path = make_family(spec);
    ProcessSpec proc = ProcessSpec::rneighbour(1);
    proc.max_rounds = 3;
    const Trace trace = run(*path, proc, std::vector<VertexId>{0});
    CHECK(trace.truncated);
    CHECK(!trace.percolated);
    ProcessSpec full = ProcessSpec::rneighbour(1);
    const Trace done = run(*path, full, std::vector<VertexId>{0});
    CHECK(done.percolated);
    CHECK(!done.truncated);
}

TEST_CASE("infection round bookkeeping is consistent") {
    MiddleLayerFamily middle(3);
    std::mt19937_64 rng(5);
    const auto initial = random_subset(middle, 0.35, rng);
    const Trace trace = run(middle, ProcessSpec::majority(0), initial);
    const std::set<VertexId> seed(initial.begin(), initial.end());
    for (std::uint64_t i = 0; i < middle.order(); ++i) {
        const bool infected = (trace.final_bits[i >> 6] >> (i & 63)) & 1ULL;
        const auto round = trace.infection_round[i];
        CHECK(infected == (round >= 0));
        if (seed.count(middle.vertex_at(i))) CHECK(round == 0);
        CHECK(round <= trace.rounds_to_stabilize);
    }
}

TEST_CASE("synchronous closure matches the brute-force sweep oracle") {
    std::vector<std::unique_ptr<GraphFamily>> graphs;
    graphs.push_back(std::make_unique<HypercubeFamily>(4));
    graphs.push_back(std::make_unique<OddFamily>(3));
    FamilySpec torus{FamilySpec::Kind::Torus, 0, 0, {3, 3}, {}, {}, 1};
    graphs.push_back(make_family(torus));
    std::mt19937_64 rng(11);
    for (const auto& graph : graphs) {
        const auto adj = oracle::adjacency_map(*graph);
        for (int m : {0, 1}) {
            for (int rep = 0; rep < 20; ++rep) {
                const auto initial = random_subset(*graph, 0.4, rng);
                const Trace trace = run(*graph, ProcessSpec::majority(m), initial);
                const auto expected = oracle::closure(
                    adj, std::set<VertexId>(initial.begin(), initial.end()),
                    [&](VertexId v, int count) {
                        return 2 * count >= graph->degree(v) + 2 * m;
                    });
                CHECK(final_set(*graph, trace) == expected);
            }
        }
    }
}

TEST_CASE("infected sets grow monotonically across rounds") {
    HypercubeFamily cube(6);
    std::mt19937_64 rng(17);
    const auto initial = random_subset(cube, 0.3, rng);
    auto state = InfectionState::from_vertices(cube, initial);
    std::uint64_t previous = state.infected_count();
    for (int i = 0; i < 10; ++i) {
        auto next = step(cube, ProcessSpec::majority(0), std::move(state));
        CHECK(next.infected_count() >= previous);
        previous = next.infected_count();
        state = std::move(next);
    }
    CHECK(static_cast<std::uint64_t>(state.round()) <= cube.order());
}

TEST_CASE("final sets are monotone in the seed set") {
    FoldedFamily folded(6);
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 30; ++rep) {
        const auto small = random_subset(folded, 0.3, rng);
        auto larger = small;
        for (VertexId v : random_subset(folded, 0.2, rng)) larger.push_back(v);
        for (const auto spec :
             {ProcessSpec::majority(0), ProcessSpec::rneighbour(3), ProcessSpec::boot(2)}) {
            const auto fs = final_set(folded, run(folded, spec, small));
            const auto fl = final_set(folded, run(folded, spec, larger));
            CHECK(std::includes(fl.begin(), fl.end(), fs.begin(), fs.end()));
        }
    }
}

TEST_CASE("raised thresholds are dominated by majority, majority by the loosened process") {
    std::vector<std::unique_ptr<GraphFamily>> graphs;
    graphs.push_back(std::make_unique<HypercubeFamily>(6));
    graphs.push_back(std::make_unique<MiddleLayerFamily>(3));
    std::mt19937_64 rng(23);
    for (const auto& graph : graphs) {
        for (int rep = 0; rep < 25; ++rep) {
            const auto initial = random_subset(*graph, 0.3 + 0.01 * rep, rng);
            const Trace raised = run(*graph, ProcessSpec::majority(2), initial);
            const Trace plain = run(*graph, ProcessSpec::majority(0), initial);
            const Trace loose = run(*graph, ProcessSpec::boot(2), initial);
            CHECK(dominates(plain, raised));
            CHECK(dominates(loose, plain));
        }
    }
}

TEST_CASE("vanishing slack scale reduces the loosened process to majority") {
    // Even-degree regular graphs: thresholds coincide round by round.
    HypercubeFamily cube(4);
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const auto initial = random_subset(cube, 0.4, rng);
        const Trace a = run(cube, ProcessSpec::boot(2, 0.0), initial);
        const Trace b = run(cube, ProcessSpec::majority(0), initial);
        CHECK(a.infection_round == b.infection_round);
    }
}

TEST_CASE("strict majority needs strictly more than half") {
    HypercubeFamily cube(2);  // C4, degree 2
    ProcessSpec strict = ProcessSpec::majority(0);
    strict.strict_majority = true;
    const Trace trace = run(cube, strict, std::vector<VertexId>{0b00});
    CHECK(!trace.percolated);
    CHECK(trace.final_count == 1);  // one infected neighbour is not > 1
}

TEST_CASE("trace percolation flag means the final set is everything") {
    OddFamily odd(3);
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const auto initial = random_subset(odd, 0.5, rng);
        const Trace trace = run(odd, ProcessSpec::majority(0), initial);
        CHECK(trace.percolated == (trace.final_count == odd.order()));
    }
}

TEST_CASE("state construction guards") {
    HypercubeFamily cube(3);
    std::vector<std::uint64_t> wrong_words(2, 0);
    CHECK_THROWS(InfectionState(cube, wrong_words));
}
