// Self-describing result documents for scans and critical-probability
// estimates. JSON is canonical; CSV is a flat projection of the same rows.
// Documents embed the semantic configuration (family, process, grid, trials,
// seed) so results are reproducible from the artifact alone; execution
// details like worker count are deliberately excluded.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/process.hpp"
#include "bootperc/sampler.hpp"

namespace bootperc {

std::string describe(const ProcessSpec& spec);

struct ScanConfig {
    std::vector<double> grid;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double lambda = 0.0;
    double z = kZ95;
};

struct ScanReport {
    std::string family;
    std::string process;
    ScanConfig config;
    std::vector<PhiEstimate> rows;
    // Reference curves at the extreme degrees; empty when degree < 3.
    std::vector<TheoryCurves> curves;
};

ScanReport scan(const GraphFamily& graph, const ProcessSpec& spec, const ScanConfig& config,
                int workers = 1);

std::string to_json(const ScanReport& report, int indent = 2);
std::string to_csv(const ScanReport& report);

struct PcReport {
    std::string family;
    std::string process;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    PcEstimate estimate;
    std::vector<TheoryCurves> curves;
    double epsilon = 0.1;
    double lambda = 0.0;
};

PcReport pc_scan(const GraphFamily& graph, const ProcessSpec& spec, std::uint64_t trials,
                 std::uint64_t seed, double epsilon, double lambda, int workers = 1);

std::string to_json(const PcReport& report, int indent = 2);
std::string to_csv(const PcReport& report);

}  // namespace bootperc
