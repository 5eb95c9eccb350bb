#include <json.hpp>

#include "bootperc/certifier.hpp"

namespace bootperc {

namespace {

const char* verdict_string(VerdictKind verdict) {
    switch (verdict) {
        case VerdictKind::Pass: return "pass";
        case VerdictKind::Fail: return "fail";
        case VerdictKind::NotEvaluated: return "not-evaluated";
    }
    return "unknown";
}

nlohmann::ordered_json witness_json(const Witness& witness) {
    return {{"property", witness.property}, {"x", witness.x},         {"ell", witness.ell},
            {"y", witness.y},               {"y2", witness.y2},       {"measured", witness.measured},
            {"bound", witness.bound},       {"detail", witness.detail}};
}

}  // namespace

std::string to_json(const Certificate& certificate, int indent) {
    nlohmann::ordered_json doc;
    doc["graph"] = certificate.graph_name;
    doc["order"] = certificate.order;
    doc["K"] = certificate.k;
    doc["ell_max"] = certificate.ell_max;
    doc["projection_depth"] = certificate.projection_depth;
    doc["centers"] = {{"mode", certificate.center_mode},
                      {"checked", certificate.centers_checked},
                      {"seed", certificate.center_seed}};

    auto props = nlohmann::ordered_json::array();
    for (const auto& report : certificate.properties) {
        nlohmann::ordered_json p;
        p["id"] = report.property;
        p["verdict"] = verdict_string(report.verdict);
        p["evaluated"] = report.evaluated;
        p["skipped"] = report.skipped;
        if (!report.skip_reason.empty()) p["skip_reason"] = report.skip_reason;
        if (report.witness.has_value()) p["witness"] = witness_json(*report.witness);
        props.push_back(std::move(p));
    }
    doc["properties"] = std::move(props);

    auto partitions = nlohmann::ordered_json::array();
    for (const auto& record : certificate.partitions) {
        partitions.push_back({{"x", record.center},
                              {"ell", record.ell},
                              {"classes", record.classes},
                              {"bound", record.class_bound},
                              {"within_bound", record.within_bound},
                              {"separated", record.separated},
                              {"evaluated", record.evaluated}});
    }
    doc["partitions"] = std::move(partitions);

    if (!certificate.failed_partitions.empty()) {
        auto failed = nlohmann::ordered_json::array();
        for (const auto& partition : certificate.failed_partitions) {
            nlohmann::ordered_json f;
            f["x"] = partition.center;
            f["ell"] = partition.ell;
            f["classes"] = partition.classes;
            failed.push_back(std::move(f));
        }
        doc["failed_partitions"] = std::move(failed);
    }

    doc["all_pass"] = certificate.all_evaluated_pass();
    return doc.dump(indent);
}

}  // namespace bootperc
