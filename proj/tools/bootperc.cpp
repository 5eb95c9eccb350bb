// Command-line front door: family construction, simulation runs, scans,
// critical-probability estimation, certification and exact-oracle runs.
// Exit codes: 0 success, 1 usage error, 2 certification failure,
// 3 resource guard tripped.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bootperc/certifier.hpp"
#include "bootperc/exact_oracle.hpp"
#include "bootperc/families.hpp"
#include "bootperc/process.hpp"
#include "bootperc/report.hpp"
#include "bootperc/sampler.hpp"

namespace {

using namespace bootperc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertifyFail = 2;
constexpr int kExitResource = 3;

struct FamilyFlags {
    std::string family;
    int n = 0;
    int q = 2;
    std::string dims;
    std::string bases;
    std::string edge_list;
    int k = 0;  // 0 = family default
};

struct ProcessFlags {
    std::string process = "majority";
    int r = 1;
    int m = 0;
    int k = 2;
    double gamma_scale = 1.0;
    bool strict = false;
    std::uint64_t max_rounds = 0;
};

struct OutputFlags {
    std::string path;
    std::string format = "json";
};

void add_family_flags(CLI::App* cmd, FamilyFlags& flags) {
    cmd->add_option("--family", flags.family,
                    "hypercube | hamming | torus | grid | product | middle-layer | odd | folded");
    cmd->add_option("--n", flags.n, "dimension parameter");
    cmd->add_option("--q", flags.q, "Hamming alphabet size");
    cmd->add_option("--dims", flags.dims, "comma-separated side lengths for torus/grid");
    cmd->add_option("--bases", flags.bases, "comma-separated base descriptors, e.g. C4,K3,P2");
    cmd->add_option("--edge-list", flags.edge_list, "explicit graph file (u v per line)");
    cmd->add_option("--K", flags.k, "class parameter (default: family's canonical K)");
}

void add_process_flags(CLI::App* cmd, ProcessFlags& flags) {
    cmd->add_option("--process", flags.process, "rneighbour | majority | boot");
    cmd->add_option("--r", flags.r, "constant threshold for rneighbour");
    cmd->add_option("--m", flags.m, "majority offset");
    cmd->add_option("--k", flags.k, "loosened rounds for boot");
    cmd->add_option("--gamma-scale", flags.gamma_scale, "slack multiplier for boot");
    cmd->add_flag("--strict", flags.strict, "strict majority comparison (count > d/2 + m)");
    cmd->add_option("--max-rounds", flags.max_rounds, "round cap (0 = order of the graph)");
}

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
    cmd->add_option("--output", flags.path, "output file (default: stdout)");
    cmd->add_option("--format", flags.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) out.push_back(std::stoi(token));
    }
    return out;
}

std::unique_ptr<GraphFamily> build_family(const FamilyFlags& flags) {
    if (!flags.edge_list.empty()) {
        return make_family(load_edge_list(flags.edge_list, flags.k > 0 ? flags.k : 1));
    }
    FamilySpec spec;
    if (flags.family == "hypercube") {
        spec.kind = FamilySpec::Kind::Hypercube;
        spec.n = flags.n;
    } else if (flags.family == "hamming") {
        spec.kind = FamilySpec::Kind::Hamming;
        spec.n = flags.n;
        spec.q = flags.q;
    } else if (flags.family == "torus") {
        spec.kind = FamilySpec::Kind::Torus;
        spec.dims = parse_int_list(flags.dims);
    } else if (flags.family == "grid") {
        spec.kind = FamilySpec::Kind::Grid;
        spec.dims = parse_int_list(flags.dims);
    } else if (flags.family == "product") {
        spec.kind = FamilySpec::Kind::Product;
        std::stringstream ss(flags.bases);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) spec.bases.push_back(BaseGraph::parse(token));
        }
    } else if (flags.family == "middle-layer" || flags.family == "middle_layer") {
        spec.kind = FamilySpec::Kind::MiddleLayer;
        spec.n = flags.n;
    } else if (flags.family == "odd") {
        spec.kind = FamilySpec::Kind::Odd;
        spec.n = flags.n;
    } else if (flags.family == "folded") {
        spec.kind = FamilySpec::Kind::Folded;
        spec.n = flags.n;
    } else {
        throw CLI::ValidationError("--family", "unknown family: " + flags.family);
    }
    return make_family(spec);
}

ProcessSpec build_process(const ProcessFlags& flags) {
    ProcessSpec spec;
    if (flags.process == "rneighbour") {
        spec = ProcessSpec::rneighbour(flags.r);
    } else if (flags.process == "majority") {
        spec = ProcessSpec::majority(flags.m);
    } else if (flags.process == "boot") {
        spec = ProcessSpec::boot(flags.k, flags.gamma_scale);
    } else {
        throw CLI::ValidationError("--process", "unknown process: " + flags.process);
    }
    spec.strict_majority = flags.strict;
    spec.max_rounds = flags.max_rounds;
    return spec;
}

// Initial-set tokens: a token is a binary mask when its length equals the
// family's encoding width and it uses only 0/1; otherwise a decimal
// encoding. An empty --initial is the empty set.
std::vector<VertexId> parse_initial(const GraphFamily& graph, const std::string& text) {
    std::vector<VertexId> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        const int bits = graph.encoding_bits();
        const bool binary = bits > 0 && static_cast<int>(token.size()) == bits &&
                            token.find_first_not_of("01") == std::string::npos;
        VertexId v = 0;
        if (binary) {
            for (char c : token) v = (v << 1) | static_cast<VertexId>(c - '0');
        } else {
            v = std::stoull(token);
        }
        graph.require_vertex(v);
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    // "lo:hi:step", inclusive of both ends up to rounding.
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string token;
    std::vector<double> parts;
    while (std::getline(ss, token, ':')) parts.push_back(std::stod(token));
    if (parts.size() != 3 || parts[2] <= 0.0) {
        throw CLI::ValidationError("--grid", "expected lo:hi:step with step > 0");
    }
    for (double p = parts[0]; p <= parts[1] + 1e-12; p += parts[2]) {
        grid.push_back(std::min(p, 1.0));
    }
    return grid;
}

void emit(const OutputFlags& flags, const std::string& text) {
    if (flags.path.empty()) {
        std::cout << text << std::endl;
    } else {
        std::ofstream out(flags.path);
        if (!out) throw std::runtime_error("cannot open output file: " + flags.path);
        out << text << "\n";
    }
}

int default_workers() {
    if (const char* env = std::getenv("BOOTPERC_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bootstrap percolation simulator and structural certifier"};
    app.require_subcommand(1);

    int workers = default_workers();
    app.add_option("--workers", workers, "worker threads for trial parallelism");

    FamilyFlags family_flags;
    ProcessFlags process_flags;
    OutputFlags output_flags;

    // families
    auto* cmd_families = app.add_subcommand("families", "construct a family and print metadata");
    add_family_flags(cmd_families, family_flags);
    add_output_flags(cmd_families, output_flags);

    // run
    auto* cmd_run = app.add_subcommand("run", "run infection trials");
    add_family_flags(cmd_run, family_flags);
    add_process_flags(cmd_run, process_flags);
    add_output_flags(cmd_run, output_flags);
    double run_p = -1.0;
    std::uint64_t run_trials = 1, run_seed = 0;
    std::string run_initial;
    bool run_has_initial = false;
    cmd_run->add_option("--p", run_p, "initial infection probability");
    cmd_run->add_option("--trials", run_trials, "number of trials");
    cmd_run->add_option("--seed", run_seed, "base seed");
    auto* initial_opt =
        cmd_run->add_option("--initial", run_initial, "explicit initial set (comma separated)");

    // scan
    auto* cmd_scan = app.add_subcommand("scan", "estimate the percolation curve over a p grid");
    add_family_flags(cmd_scan, family_flags);
    add_process_flags(cmd_scan, process_flags);
    add_output_flags(cmd_scan, output_flags);
    std::string scan_grid = "0:1:0.05";
    std::uint64_t scan_trials = 100, scan_seed = 0;
    double scan_epsilon = 0.1, scan_lambda = 0.0;
    cmd_scan->add_option("--grid", scan_grid, "p grid as lo:hi:step");
    cmd_scan->add_option("--trials", scan_trials, "trials per grid point");
    cmd_scan->add_option("--seed", scan_seed, "base seed");
    cmd_scan->add_option("--epsilon", scan_epsilon, "epsilon for the reference bounds");
    cmd_scan->add_option("--lambda", scan_lambda, "lambda for the reference window point");

    // pc
    auto* cmd_pc = app.add_subcommand("pc", "estimate the critical probability");
    add_family_flags(cmd_pc, family_flags);
    add_process_flags(cmd_pc, process_flags);
    add_output_flags(cmd_pc, output_flags);
    std::uint64_t pc_trials = 1000, pc_seed = 0;
    double pc_epsilon = 0.1, pc_lambda = 0.0;
    cmd_pc->add_option("--trials", pc_trials, "number of coupled trials");
    cmd_pc->add_option("--seed", pc_seed, "base seed");
    cmd_pc->add_option("--epsilon", pc_epsilon, "epsilon for the reference bounds");
    cmd_pc->add_option("--lambda", pc_lambda, "lambda for the reference window point");

    // certify
    auto* cmd_certify = app.add_subcommand("certify", "check the structural properties");
    add_family_flags(cmd_certify, family_flags);
    add_output_flags(cmd_certify, output_flags);
    int certify_ell_max = 2;
    int certify_depth = 1;
    std::uint64_t certify_centers = 64, certify_center_seed = 0;
    std::string certify_mode = "auto";
    cmd_certify->add_option("--ell-max", certify_ell_max, "largest radius checked (1..6)");
    cmd_certify->add_option("--depth", certify_depth, "projection re-certification depth");
    cmd_certify->add_option("--centers", certify_centers, "sample size for large graphs");
    cmd_certify->add_option("--center-seed", certify_center_seed, "seed for center sampling");
    cmd_certify->add_option("--center-mode", certify_mode, "auto | exhaustive | sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));

    // exact
    auto* cmd_exact = app.add_subcommand("exact", "exact oracle on small graphs");
    add_family_flags(cmd_exact, family_flags);
    add_process_flags(cmd_exact, process_flags);
    add_output_flags(cmd_exact, output_flags);
    double exact_p = -1.0;
    bool exact_pc_flag = false;
    cmd_exact->add_option("--p", exact_p, "evaluate the exact percolation probability at p");
    cmd_exact->add_flag("--pc", exact_pc_flag, "compute the exact critical probability");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_families->parsed()) {
            auto graph = build_family(family_flags);
            nlohmann::ordered_json doc;
            doc["command"] = "families";
            doc["family"] = graph->name();
            doc["order"] = graph->order();
            doc["min_degree"] = graph->min_degree();
            doc["max_degree"] = graph->max_degree();
            doc["canonical_K"] = graph->canonical_k();
            doc["encoding_bits"] = graph->encoding_bits();
            emit(output_flags, doc.dump(2));
            return kExitOk;
        }

        if (cmd_run->parsed()) {
            auto graph = build_family(family_flags);
            const ProcessSpec spec = build_process(process_flags);
            nlohmann::ordered_json doc;
            doc["command"] = "run";
            doc["family"] = graph->name();
            doc["process"] = describe(spec);
            run_has_initial = initial_opt->count() > 0;
            auto traces = nlohmann::ordered_json::array();
            if (run_has_initial) {
                const auto initial = parse_initial(*graph, run_initial);
                const Trace trace = run(*graph, spec, initial);
                traces.push_back({{"initial_size", initial.size()},
                                  {"percolated", trace.percolated},
                                  {"rounds_to_stabilize", trace.rounds_to_stabilize},
                                  {"final_size", trace.final_count},
                                  {"truncated", trace.truncated}});
            } else {
                if (run_p < 0.0 || run_p > 1.0) {
                    std::cerr << "run: need --p in [0,1] or --initial\n";
                    return kExitUsage;
                }
                doc["p"] = run_p;
                doc["trials"] = run_trials;
                doc["seed"] = run_seed;
                for (std::uint64_t t = 0; t < run_trials; ++t) {
                    const CounterRandomness randomness(run_seed, t);
                    InfectionState state(*graph,
                                         sample_infected_bits(*graph, run_p, randomness));
                    const std::uint64_t initial_size = state.infected_count();
                    const Trace trace = run(*graph, spec, std::move(state));
                    traces.push_back({{"trial", t},
                                      {"initial_size", initial_size},
                                      {"percolated", trace.percolated},
                                      {"rounds_to_stabilize", trace.rounds_to_stabilize},
                                      {"final_size", trace.final_count},
                                      {"truncated", trace.truncated}});
                }
            }
            doc["traces"] = std::move(traces);
            emit(output_flags, doc.dump(2));
            return kExitOk;
        }

        if (cmd_scan->parsed()) {
            auto graph = build_family(family_flags);
            const ProcessSpec spec = build_process(process_flags);
            ScanConfig config;
            config.grid = parse_grid(scan_grid);
            config.trials = scan_trials;
            config.seed = scan_seed;
            config.epsilon = scan_epsilon;
            config.lambda = scan_lambda;
            const ScanReport report = scan(*graph, spec, config, workers);
            emit(output_flags, output_flags.format == "csv" ? to_csv(report) : to_json(report));
            return kExitOk;
        }

        if (cmd_pc->parsed()) {
            auto graph = build_family(family_flags);
            const ProcessSpec spec = build_process(process_flags);
            const PcReport report =
                pc_scan(*graph, spec, pc_trials, pc_seed, pc_epsilon, pc_lambda, workers);
            emit(output_flags, output_flags.format == "csv" ? to_csv(report) : to_json(report));
            return kExitOk;
        }

        if (cmd_certify->parsed()) {
            auto graph = build_family(family_flags);
            CertRequest request;
            request.graph = graph.get();
            request.k = family_flags.k > 0 ? family_flags.k : graph->canonical_k();
            request.ell_max = certify_ell_max;
            request.projection_depth = certify_depth;
            request.centers.sample_count = certify_centers;
            request.centers.seed = certify_center_seed;
            if (certify_mode == "exhaustive") request.centers.mode = CenterPolicy::Mode::Exhaustive;
            if (certify_mode == "sampled") request.centers.mode = CenterPolicy::Mode::Sampled;
            const Certificate certificate = certify(request);
            emit(output_flags, to_json(certificate));
            return certificate.any_fail() ? kExitCertifyFail : kExitOk;
        }

        if (cmd_exact->parsed()) {
            auto graph = build_family(family_flags);
            const ProcessSpec spec = build_process(process_flags);
            nlohmann::ordered_json doc;
            doc["command"] = "exact";
            doc["family"] = graph->name();
            doc["process"] = describe(spec);
            if (exact_p >= 0.0) doc["phi"] = exact_phi(*graph, spec, exact_p);
            if (exact_p >= 0.0) doc["p"] = exact_p;
            if (exact_pc_flag) doc["pc"] = exact_pc(*graph, spec);
            if (exact_p < 0.0 && !exact_pc_flag) {
                std::cerr << "exact: need --p or --pc\n";
                return kExitUsage;
            }
            emit(output_flags, doc.dump(2));
            return kExitOk;
        }
    } catch (const BudgetExceededError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const OrderGuardError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
