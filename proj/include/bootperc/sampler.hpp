// Monte Carlo machinery: counter-based per-trial randomness, percolation
// probability estimates with Wilson intervals, coupled per-trial critical
// probabilities, and the theoretical reference curves.
#pragma once

#include <cstdint>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/process.hpp"

namespace bootperc {

// Per-vertex uniforms for one trial. Implementations must be pure functions
// of the vertex encoding so the same trial can be re-evaluated at any p.
class UniformSource {
public:
    virtual ~UniformSource() = default;
    virtual double uniform(VertexId v) const = 0;
};

// Counter-based generator keyed by (base_seed, trial_index, encoding):
// reproducible, splittable, and storage-free. The p-random sets it induces
// are coupled: A_p grows monotonically with p.
class CounterRandomness final : public UniformSource {
public:
    CounterRandomness(std::uint64_t base_seed, std::uint64_t trial_index);
    double uniform(VertexId v) const override;

private:
    std::uint64_t stream_;
};

// Initial infected set {v : U_v < p} as a bit-packed vector over indexes.
std::vector<std::uint64_t> sample_infected_bits(const GraphFamily& graph, double p,
                                                const UniformSource& randomness);
std::vector<VertexId> sample_infected(const GraphFamily& graph, double p,
                                      const UniformSource& randomness);

struct PhiEstimate {
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double phi_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double z = 0.0;
};

// Wilson score interval.
void wilson_interval(std::uint64_t successes, std::uint64_t trials, double z, double& lo,
                     double& hi);

constexpr double kZ95 = 1.959963985;
constexpr double kZ99 = 2.575829304;

PhiEstimate estimate_phi(const GraphFamily& graph, const ProcessSpec& spec, double p,
                         std::uint64_t trials, std::uint64_t base_seed, int workers = 1,
                         double z = kZ95);

// Smallest p at which this coupled trial percolates, found by bisection to
// tolerance 2^-20. Valid for any variant monotone in the initial set.
double trial_critical_p(const GraphFamily& graph, const ProcessSpec& spec,
                        const UniformSource& randomness);

constexpr double kCriticalTolerance = 1.0 / (1 << 20);

struct PcEstimate {
    std::uint64_t trials = 0;
    std::vector<double> critical_values;  // per trial, in trial order
    double median = 0.0;
    double q05 = 0.0, q25 = 0.0, q75 = 0.0, q95 = 0.0;
    double tolerance = kCriticalTolerance;
};

PcEstimate estimate_pc(const GraphFamily& graph, const ProcessSpec& spec, std::uint64_t trials,
                       std::uint64_t base_seed, int workers = 1);

struct TheoryCurves {
    int d = 0;
    double epsilon = 0.0;
    double lambda = 0.0;
    double sigma_d = 0.0;       // sqrt(ln d / d)
    double p_tilde_c = 0.0;     // 1/2 - sigma/2
    double lower_bound = 0.0;   // 1/2 - (1/2 + eps) sigma: no percolation below
    double upper_bound = 0.0;   // 1/2 - (1/2 - eps) sigma: percolation above
    double window_point = 0.0;  // 1/2 - sigma/2 + lambda ln ln d / sqrt(d ln d)
};

TheoryCurves theory_curves(int d, double epsilon, double lambda);

}  // namespace bootperc
