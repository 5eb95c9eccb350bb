#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "bootperc/exact_oracle.hpp"
#include "bootperc/families.hpp"
#include "bootperc/report.hpp"
#include "bootperc/sampler.hpp"

using namespace bootperc;

namespace {

// Fixed per-vertex uniforms for hand-analysed cases.
class FixedUniforms final : public UniformSource {
public:
    explicit FixedUniforms(std::map<VertexId, double> values) : values_(std::move(values)) {}
    double uniform(VertexId v) const override { return values_.at(v); }

private:
    std::map<VertexId, double> values_;
};

}  // namespace

TEST_CASE("p = 0 samples nothing, p = 1 samples everything") {
    MiddleLayerFamily middle(3);
    const CounterRandomness randomness(42, 0);
    CHECK(sample_infected(middle, 0.0, randomness).empty());
    CHECK(sample_infected(middle, 1.0, randomness).size() == middle.order());
}

TEST_CASE("initial set size concentrates at the binomial mean") {
    HypercubeFamily cube(10);
    const double p = 0.5;
    const int trials = 10000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const CounterRandomness randomness(2024, static_cast<std::uint64_t>(t));
        std::uint64_t size = 0;
        for (const auto& word : sample_infected_bits(cube, p, randomness)) {
            size += static_cast<std::uint64_t>(popcount64(word));
        }
        total += static_cast<double>(size);
    }
    const double mean = total / trials;
    const double expect = 512.0;
    // Standard error of the mean over 10^4 trials of Bin(1024, 1/2).
    const double sem = std::sqrt(1024.0 * 0.25 / trials);
    CHECK(std::abs(mean - expect) < 3.0 * sem * 10.0);  // generous but binding
}

TEST_CASE("coupling: the sampled set grows with p") {
    OddFamily odd(4);
    const CounterRandomness randomness(7, 3);
    const auto small = sample_infected(odd, 0.3, randomness);
    const auto large = sample_infected(odd, 0.6, randomness);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
}

TEST_CASE("estimate_phi on an edge matches the closed form") {
    HypercubeFamily cube(1);
    // percolates iff the initial set is non-empty: Phi(1/2) = 3/4.
    const PhiEstimate est = estimate_phi(cube, ProcessSpec::majority(0), 0.5, 100000, 99);
    CHECK(est.phi_hat == doctest::Approx(0.75).epsilon(0.01));
    CHECK(est.ci_low <= 0.75);
    CHECK(est.ci_high >= 0.75);
    CHECK(est.ci_low <= est.phi_hat);
    CHECK(est.phi_hat <= est.ci_high);
}

TEST_CASE("estimate_phi on the 4-cycle matches the subset enumeration") {
    HypercubeFamily cube(2);
    const PhiEstimate est = estimate_phi(cube, ProcessSpec::majority(0), 0.5, 100000, 7);
    CHECK(est.phi_hat == doctest::Approx(0.9375).epsilon(0.01));
}

TEST_CASE("a full initial set always percolates") {
    FoldedFamily folded(5);
    const PhiEstimate est = estimate_phi(folded, ProcessSpec::majority(0), 1.0, 10, 1);
    CHECK(est.successes == 10);
    CHECK(est.phi_hat == 1.0);
}

TEST_CASE("per-trial critical point on an edge is the smaller uniform") {
    HypercubeFamily cube(1);
    const FixedUniforms uniforms({{0, 0.3}, {1, 0.7}});
    const double p_star = trial_critical_p(cube, ProcessSpec::majority(0), uniforms);
    CHECK(p_star == doctest::Approx(0.3).epsilon(1e-5));
}

TEST_CASE("degenerate uniforms give extreme critical points") {
    HypercubeFamily cube(2);
    const FixedUniforms zeros({{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}});
    CHECK(trial_critical_p(cube, ProcessSpec::majority(0), zeros) <= kCriticalTolerance);
    const FixedUniforms ones({{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}});
    CHECK(trial_critical_p(cube, ProcessSpec::majority(0), ones) >=
          1.0 - kCriticalTolerance);
    // Zero threshold percolates from the empty set: the infimum is 0 exactly.
    CHECK(trial_critical_p(cube, ProcessSpec::rneighbour(0), ones) == 0.0);
}

TEST_CASE("median critical point on an edge estimates the exact value") {
    HypercubeFamily cube(1);
    const PcEstimate est = estimate_pc(cube, ProcessSpec::majority(0), 20000, 12345);
    CHECK(est.median == doctest::Approx(0.2928932188).epsilon(0.05));
    CHECK(std::abs(est.median - 0.2928932188) < 0.015);
    CHECK(est.q05 <= est.q25);
    CHECK(est.q25 <= est.median);
    CHECK(est.median <= est.q75);
    CHECK(est.q75 <= est.q95);
}

TEST_CASE("critical points are a step function of p (coupling)") {
    HypercubeFamily cube(8);
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const CounterRandomness randomness(88, trial);
        const double p_star = trial_critical_p(cube, ProcessSpec::majority(0), randomness);
        bool was_percolating = false;
        for (int i = 0; i <= 20; ++i) {
            const double p = i / 20.0;
            InfectionState state(cube, sample_infected_bits(cube, p, randomness));
            const bool percolates = run(cube, ProcessSpec::majority(0), std::move(state)).percolated;
            if (was_percolating) CHECK(percolates);  // no 1 -> 0 transition
            was_percolating = percolates;
            if (std::abs(p - p_star) > kCriticalTolerance) {
                CHECK(percolates == (p > p_star));
            }
        }
    }
}

TEST_CASE("empirical CDF of critical points equals the direct estimate") {
    HypercubeFamily cube(4);
    const std::uint64_t trials = 500, seed = 314;
    std::vector<double> p_stars(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const CounterRandomness randomness(seed, t);
        p_stars[t] = trial_critical_p(cube, ProcessSpec::majority(0), randomness);
    }
    for (double t : {0.2, 0.35, 0.5}) {
        const PhiEstimate est = estimate_phi(cube, ProcessSpec::majority(0), t, trials, seed);
        std::uint64_t below = 0;
        for (double p : p_stars) {
            if (p <= t) ++below;
        }
        CHECK(below == est.successes);  // the same events, bit for bit
    }
}

TEST_CASE("estimates are bit-identical across runs and worker counts") {
    MiddleLayerFamily middle(3);
    const auto a = estimate_phi(middle, ProcessSpec::majority(0), 0.4, 4000, 5, 1);
    const auto b = estimate_phi(middle, ProcessSpec::majority(0), 0.4, 4000, 5, 8);
    CHECK(a.successes == b.successes);
    CHECK(a.phi_hat == b.phi_hat);
    CHECK(a.ci_low == b.ci_low);
    const auto pa = estimate_pc(middle, ProcessSpec::majority(0), 500, 5, 1);
    const auto pb = estimate_pc(middle, ProcessSpec::majority(0), 500, 5, 8);
    CHECK(pa.critical_values == pb.critical_values);
    CHECK(pa.median == pb.median);
}

TEST_CASE("Wilson interval behaves at the boundaries") {
    double lo = -1, hi = -1;
    wilson_interval(0, 100, kZ95, lo, hi);
    CHECK(lo == 0.0);
    CHECK(hi > 0.0);
    wilson_interval(100, 100, kZ95, lo, hi);
    CHECK(hi == 1.0);
    CHECK(lo < 1.0);
    wilson_interval(50, 100, kZ95, lo, hi);
    CHECK(lo == doctest::Approx(0.404).epsilon(0.01));
    CHECK(hi == doctest::Approx(0.596).epsilon(0.01));
}

TEST_CASE("Wilson 95% interval covers a known value most of the time") {
    HypercubeFamily cube(1);
    const ExactPhi exact(cube, ProcessSpec::majority(0));
    const double truth = exact.at(0.3);
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
        const PhiEstimate est =
            estimate_phi(cube, ProcessSpec::majority(0), 0.3, 1000, 1000 + rep);
        if (est.ci_low <= truth && truth <= est.ci_high) ++covered;
    }
    CHECK(covered >= 186);  // 93% of 200
}

TEST_CASE("theory curves match direct formula evaluation") {
    const TheoryCurves c = theory_curves(100, 0.0, 0.0);
    CHECK(c.p_tilde_c == doctest::Approx(0.3927016987).epsilon(1e-9));
    CHECK(c.lower_bound == c.p_tilde_c);
    CHECK(c.upper_bound == c.p_tilde_c);

    const TheoryCurves window = theory_curves(1024, 0.1, 0.0);
    CHECK(window.window_point == window.p_tilde_c);  // lambda = 0
    CHECK(window.lower_bound < window.p_tilde_c);
    CHECK(window.p_tilde_c < window.upper_bound);

    const TheoryCurves d20 = theory_curves(20, 0.0, 0.0);
    CHECK(d20.sigma_d == doctest::Approx(0.3870227560).epsilon(1e-9));
    CHECK(d20.p_tilde_c == doctest::Approx(0.3064886220).epsilon(1e-9));

    CHECK_THROWS(theory_curves(2, 0.1, 0.0));
    CHECK_THROWS(theory_curves(100, -0.1, 0.0));
}

TEST_CASE("scan rows are monotone under shared randomness") {
    HypercubeFamily cube(6);
    ScanConfig config;
    for (int i = 0; i <= 20; ++i) config.grid.push_back(i / 20.0);
    config.trials = 200;
    config.seed = 17;
    const ScanReport report = scan(cube, ProcessSpec::majority(0), config, 2);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].successes >= report.rows[i - 1].successes);
    }
    const std::string json_once = to_json(report);
    const ScanReport again = scan(cube, ProcessSpec::majority(0), config, 8);
    CHECK(to_json(again) == json_once);
    CHECK(to_csv(report) == to_csv(again));
}
