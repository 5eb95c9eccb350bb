#include "bootperc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bootperc/bits.hpp"

namespace bootperc {

namespace {

// Static block partition of [0, trials) over workers; results land in
// pre-sized slots so aggregation is independent of scheduling.
template <typename Fn>
void parallel_trials(std::uint64_t trials, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || trials < 2) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t lo = trials * i / w;
        const std::uint64_t hi = trials * (i + 1) / w;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t t = lo; t < hi; ++t) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

bool percolates_at(const GraphFamily& graph, const ProcessSpec& spec, double p,
                   const UniformSource& randomness) {
    InfectionState state(graph, sample_infected_bits(graph, p, randomness));
    return run(graph, spec, std::move(state)).percolated;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

CounterRandomness::CounterRandomness(std::uint64_t base_seed, std::uint64_t trial_index)
    : stream_(splitmix64(splitmix64(base_seed) ^
                         (0x9e3779b97f4a7c15ULL * (trial_index + 1)))) {}

double CounterRandomness::uniform(VertexId v) const {
    const std::uint64_t h = splitmix64(stream_ ^ (v * 0xff51afd7ed558ccdULL + 0x2545f4914f6cdd1dULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_infected_bits(const GraphFamily& graph, double p,
                                                const UniformSource& randomness) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
    const std::uint64_t order = graph.order();
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((order + 63) / 64), 0);
    for (std::uint64_t i = 0; i < order; ++i) {
        if (randomness.uniform(graph.vertex_at(i)) < p) {
            bits[i >> 6] |= (1ULL << (i & 63));
        }
    }
    return bits;
}

std::vector<VertexId> sample_infected(const GraphFamily& graph, double p,
                                      const UniformSource& randomness) {
    std::vector<VertexId> out;
    const std::uint64_t order = graph.order();
    for (std::uint64_t i = 0; i < order; ++i) {
        const VertexId v = graph.vertex_at(i);
        if (randomness.uniform(v) < p) out.push_back(v);
    }
    return out;
}

void wilson_interval(std::uint64_t successes, std::uint64_t trials, double z, double& lo,
                     double& hi) {
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // Clamp to [0,1] and keep the point estimate inside despite rounding.
    lo = std::min(std::max(0.0, center - half), phat);
    hi = std::max(std::min(1.0, center + half), phat);
}

PhiEstimate estimate_phi(const GraphFamily& graph, const ProcessSpec& spec, double p,
                         std::uint64_t trials, std::uint64_t base_seed, int workers, double z) {
    if (trials < 1) throw std::invalid_argument("estimate_phi needs at least one trial");
    std::vector<std::uint8_t> outcome(static_cast<std::size_t>(trials), 0);
    parallel_trials(trials, workers, [&](std::uint64_t t) {
        const CounterRandomness randomness(base_seed, t);
        outcome[static_cast<std::size_t>(t)] = percolates_at(graph, spec, p, randomness) ? 1 : 0;
    });

    PhiEstimate est;
    est.p = p;
    est.trials = trials;
    for (std::uint8_t o : outcome) est.successes += o;
    est.phi_hat = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.z = z;
    wilson_interval(est.successes, est.trials, z, est.ci_low, est.ci_high);
    return est;
}

double trial_critical_p(const GraphFamily& graph, const ProcessSpec& spec,
                        const UniformSource& randomness) {
    if (percolates_at(graph, spec, 0.0, randomness)) return 0.0;
    double lo = 0.0, hi = 1.0;  // invariant: fails at lo, percolates at hi
    while (hi - lo > kCriticalTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (percolates_at(graph, spec, mid, randomness)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PcEstimate estimate_pc(const GraphFamily& graph, const ProcessSpec& spec, std::uint64_t trials,
                       std::uint64_t base_seed, int workers) {
    if (trials < 1) throw std::invalid_argument("estimate_pc needs at least one trial");
    PcEstimate est;
    est.trials = trials;
    est.critical_values.assign(static_cast<std::size_t>(trials), 0.0);
    parallel_trials(trials, workers, [&](std::uint64_t t) {
        const CounterRandomness randomness(base_seed, t);
        est.critical_values[static_cast<std::size_t>(t)] = trial_critical_p(graph, spec, randomness);
    });

    std::vector<double> sorted = est.critical_values;
    std::sort(sorted.begin(), sorted.end());
    est.median = quantile_sorted(sorted, 0.5);
    est.q05 = quantile_sorted(sorted, 0.05);
    est.q25 = quantile_sorted(sorted, 0.25);
    est.q75 = quantile_sorted(sorted, 0.75);
    est.q95 = quantile_sorted(sorted, 0.95);
    return est;
}

TheoryCurves theory_curves(int d, double epsilon, double lambda) {
    if (d < 3) throw std::invalid_argument("theory curves need degree >= 3");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    TheoryCurves curves;
    curves.d = d;
    curves.epsilon = epsilon;
    curves.lambda = lambda;
    const double dd = static_cast<double>(d);
    const double s = sigma(d);
    curves.sigma_d = s;
    curves.p_tilde_c = 0.5 - 0.5 * s;
    curves.lower_bound = 0.5 - (0.5 + epsilon) * s;
    curves.upper_bound = 0.5 - (0.5 - epsilon) * s;
    curves.window_point =
        curves.p_tilde_c + lambda * std::log(std::log(dd)) / std::sqrt(dd * std::log(dd));
    return curves;
}

}  // namespace bootperc
