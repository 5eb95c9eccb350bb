#include "bootperc/report.hpp"

#include <sstream>

#include <json.hpp>

namespace bootperc {

namespace {

std::vector<TheoryCurves> reference_curves(const GraphFamily& graph, double epsilon,
                                           double lambda) {
    std::vector<TheoryCurves> curves;
    std::vector<int> degrees{graph.min_degree()};
    if (graph.max_degree() != graph.min_degree()) degrees.push_back(graph.max_degree());
    for (int d : degrees) {
        if (d >= 3) curves.push_back(theory_curves(d, epsilon, lambda));
    }
    return curves;
}

nlohmann::ordered_json curves_json(const std::vector<TheoryCurves>& curves) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : curves) {
        arr.push_back({{"d", c.d},
                       {"epsilon", c.epsilon},
                       {"lambda", c.lambda},
                       {"sigma", c.sigma_d},
                       {"p_tilde_c", c.p_tilde_c},
                       {"lower_bound", c.lower_bound},
                       {"upper_bound", c.upper_bound},
                       {"window_point", c.window_point}});
    }
    return arr;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string describe(const ProcessSpec& spec) {
    switch (spec.variant) {
        case ProcessSpec::Variant::RNeighbour:
            return "rneighbour(r=" + std::to_string(spec.r) + ")";
        case ProcessSpec::Variant::Majority:
            return "majority(m=" + std::to_string(spec.m) +
                   (spec.strict_majority ? ",strict" : "") + ")";
        case ProcessSpec::Variant::Boot: {
            std::ostringstream os;
            os << "boot(k=" << spec.k << ",gamma_scale=" << spec.gamma_scale << ")";
            return os.str();
        }
    }
    return "unknown";
}

ScanReport scan(const GraphFamily& graph, const ProcessSpec& spec, const ScanConfig& config,
                int workers) {
    ScanReport report;
    report.family = graph.name();
    report.process = describe(spec);
    report.config = config;
    report.rows.reserve(config.grid.size());
    for (double p : config.grid) {
        report.rows.push_back(
            estimate_phi(graph, spec, p, config.trials, config.seed, workers, config.z));
    }
    report.curves = reference_curves(graph, config.epsilon, config.lambda);
    return report;
}

std::string to_json(const ScanReport& report, int indent) {
    nlohmann::ordered_json doc;
    doc["command"] = "scan";
    doc["family"] = report.family;
    doc["process"] = report.process;
    doc["trials"] = report.config.trials;
    doc["seed"] = report.config.seed;
    doc["z"] = report.config.z;
    doc["epsilon"] = report.config.epsilon;
    doc["lambda"] = report.config.lambda;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"p", row.p},
                        {"trials", row.trials},
                        {"successes", row.successes},
                        {"phi_hat", row.phi_hat},
                        {"ci_low", row.ci_low},
                        {"ci_high", row.ci_high}});
    }
    doc["rows"] = std::move(rows);
    doc["theory"] = curves_json(report.curves);
    return doc.dump(indent);
}

std::string to_csv(const ScanReport& report) {
    std::ostringstream os;
    os << "p,phi_hat,ci_low,ci_high,successes,trials";
    // Reference values are constants; repeat them per row for flat plotting.
    for (std::size_t i = 0; i < report.curves.size(); ++i) {
        const std::string tag = "_d" + std::to_string(report.curves[i].d);
        os << ",p_tilde_c" << tag << ",lower_bound" << tag << ",upper_bound" << tag
           << ",window_point" << tag;
    }
    os << "\n";
    for (const auto& row : report.rows) {
        os << format_double(row.p) << ',' << format_double(row.phi_hat) << ','
           << format_double(row.ci_low) << ',' << format_double(row.ci_high) << ','
           << row.successes << ',' << row.trials;
        for (const auto& c : report.curves) {
            os << ',' << format_double(c.p_tilde_c) << ',' << format_double(c.lower_bound) << ','
               << format_double(c.upper_bound) << ',' << format_double(c.window_point);
        }
        os << "\n";
    }
    return os.str();
}

PcReport pc_scan(const GraphFamily& graph, const ProcessSpec& spec, std::uint64_t trials,
                 std::uint64_t seed, double epsilon, double lambda, int workers) {
    PcReport report;
    report.family = graph.name();
    report.process = describe(spec);
    report.trials = trials;
    report.seed = seed;
    report.epsilon = epsilon;
    report.lambda = lambda;
    report.estimate = estimate_pc(graph, spec, trials, seed, workers);
    report.curves = reference_curves(graph, epsilon, lambda);
    return report;
}

std::string to_json(const PcReport& report, int indent) {
    nlohmann::ordered_json doc;
    doc["command"] = "pc";
    doc["family"] = report.family;
    doc["process"] = report.process;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["epsilon"] = report.epsilon;
    doc["lambda"] = report.lambda;
    doc["tolerance"] = report.estimate.tolerance;
    doc["pc_median"] = report.estimate.median;
    doc["quantiles"] = {{"q05", report.estimate.q05},
                        {"q25", report.estimate.q25},
                        {"q75", report.estimate.q75},
                        {"q95", report.estimate.q95}};
    doc["theory"] = curves_json(report.curves);
    return doc.dump(indent);
}

std::string to_csv(const PcReport& report) {
    std::ostringstream os;
    os << "pc_median,q05,q25,q75,q95\n";
    os << format_double(report.estimate.median) << ',' << format_double(report.estimate.q05) << ','
       << format_double(report.estimate.q25) << ',' << format_double(report.estimate.q75) << ','
       << format_double(report.estimate.q95) << "\n";
    return os.str();
}

}  // namespace bootperc
