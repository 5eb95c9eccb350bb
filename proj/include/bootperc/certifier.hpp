// Structural certifier: checks the six defining properties of the geometric
// graph class on a family (exhaustively or over sampled centers), builds
// sphere partitions into well-separated classes, and emits a machine-
// readable certificate whose failure witnesses replay against raw graph
// queries.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/traversal.hpp"

namespace bootperc {

// Stable property identifiers used in certificates.
inline constexpr const char* kPropLocalRegularity = "local-regularity";
inline constexpr const char* kPropBackwardsExpansion = "backwards-expansion";
inline constexpr const char* kPropTypicalStructure = "typical-structure";
inline constexpr const char* kPropProjection = "projection";
inline constexpr const char* kPropSeparation = "separation";
inline constexpr const char* kPropOrderBound = "order-bound";

enum class VerdictKind { Pass, Fail, NotEvaluated };

struct Witness {
    std::string property;
    VertexId x = 0;
    int ell = 0;
    VertexId y = 0;
    VertexId y2 = 0;  // second vertex for pair conditions, else unused
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct PropertyReport {
    std::string property;
    VerdictKind verdict = VerdictKind::Pass;
    std::optional<Witness> witness;
    std::uint64_t evaluated = 0;  // sub-checks evaluated
    std::uint64_t skipped = 0;    // sub-checks not evaluated
    std::string skip_reason;

    void merge(const PropertyReport& other);
};

struct SeparatingPartition {
    VertexId center = 0;
    int ell = 0;
    std::vector<std::vector<VertexId>> classes;  // singleton non-typical classes first
    std::uint64_t class_bound = 0;
    bool within_bound = false;
    bool separated = false;  // re-verified pairwise, not just by construction
    bool evaluated = true;   // false when the oracle was unavailable
};

struct PartitionRecord {
    VertexId center = 0;
    int ell = 0;
    std::uint64_t classes = 0;
    std::uint64_t class_bound = 0;
    bool within_bound = false;
    bool separated = false;
    bool evaluated = true;
};

struct CenterPolicy {
    enum class Mode { Auto, Exhaustive, Sampled };
    Mode mode = Mode::Auto;
    std::uint64_t sample_count = 64;
    std::uint64_t seed = 0;
};

struct CertRequest {
    const GraphFamily* graph = nullptr;
    int k = 1;
    int ell_max = 6;
    CenterPolicy centers;
    int projection_depth = 1;
    TraversalBudget budget;
};

struct Certificate {
    std::string graph_name;
    std::uint64_t order = 0;
    int k = 0;
    int ell_max = 0;
    int projection_depth = 0;
    std::string center_mode;
    std::uint64_t centers_checked = 0;
    std::uint64_t center_seed = 0;
    std::vector<PropertyReport> properties;
    std::vector<PartitionRecord> partitions;
    std::vector<SeparatingPartition> failed_partitions;

    const PropertyReport* property(const std::string& id) const;
    bool any_fail() const;
    // True when nothing failed: every evaluated check passed and the
    // partitions were within bound and separated wherever evaluated.
    bool all_evaluated_pass() const;
};

// Per-center property checks. `ell_max` is honoured up to 6.
PropertyReport check_local_regularity(const GraphFamily& graph, VertexId x, int ell_max, int k,
                                      const TraversalBudget& budget = {});
PropertyReport check_backwards_expansion(const GraphFamily& graph, VertexId x, int ell_max, int k,
                                         const TraversalBudget& budget = {});
PropertyReport check_typical_structure(const GraphFamily& graph, VertexId x, int ell_max, int k,
                                       const TraversalBudget& budget = {});
PropertyReport check_projection(const GraphFamily& graph, VertexId x, int ell_max, int k,
                                int depth, const TraversalBudget& budget = {});
PropertyReport check_separation(const GraphFamily& graph, VertexId x, int ell_max, int k,
                                const TraversalBudget& budget = {});
PropertyReport check_order_bound(const GraphFamily& graph, int k);

SeparatingPartition separating_partition(const GraphFamily& graph, VertexId x, int ell, int k,
                                         const TraversalBudget& budget = {});

Certificate certify(const CertRequest& request);

// Recomputes the witnessed quantity from raw graph queries; true iff the
// violation reproduces exactly (same measured value, still above bound).
bool replay_witness(const GraphFamily& graph, const Witness& witness);

std::string to_json(const Certificate& certificate, int indent = 2);

}  // namespace bootperc
