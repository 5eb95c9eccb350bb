// Implicit-graph contract: families expose vertex enumeration, neighbour
// generation, degrees, the non-typical-vertex oracle and projection
// subgraphs without ever materializing global adjacency.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bootperc {

// Opaque 64-bit vertex handle. Interpretation belongs to the owning family:
// coordinate bitmask for cube-like families, subset bitmask for Kneser-type
// families, mixed-radix index for products, plain index for explicit graphs.
using VertexId = std::uint64_t;

struct InvalidVertexError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadiusRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OrderGuardError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Verdict of the non-typical-vertex oracle. Families whose oracle is only
// defined inside a local-isomorphism radius answer NotEvaluated beyond it.
enum class Typicality { Typical, NonTypical, NotEvaluated };

struct Neighbourhood {
    VertexId center;
    std::vector<VertexId> members;  // canonical order, pairwise distinct, center excluded
};

class GraphFamily;

// Projection subgraph G(y) for an anchor x and target y at distance ell.
// The subgraph is a restricted view of the parent: membership predicate,
// degree function and its own enumeration, vertices keep parent encodings.
struct ProjectionHandle {
    const GraphFamily* parent = nullptr;
    VertexId anchor = 0;  // x
    VertexId target = 0;  // y
    int radius = 0;       // dist(x, y)
    std::unique_ptr<GraphFamily> subgraph;
};

// Immutable implicit graph. All methods are const and thread-safe; traversal
// scratch state is always owned by the caller.
class GraphFamily {
public:
    virtual ~GraphFamily() = default;

    virtual std::string name() const = 0;
    virtual std::uint64_t order() const = 0;
    // K for which membership in the geometric class is claimed.
    virtual int canonical_k() const = 0;
    virtual int min_degree() const = 0;
    virtual int max_degree() const = 0;
    // Width of bitmask encodings, 0 when encodings are not mask-shaped.
    virtual int encoding_bits() const { return 0; }

    virtual bool is_vertex(VertexId v) const = 0;
    virtual VertexId vertex_at(std::uint64_t index) const = 0;
    virtual std::uint64_t index_of(VertexId v) const = 0;
    virtual int degree(VertexId v) const = 0;

    // Appends the neighbours of v in the family's canonical (ascending
    // encoding) order. `out` is not cleared.
    virtual void append_neighbours(VertexId v, std::vector<VertexId>& out) const = 0;

    Neighbourhood neighbourhood(VertexId v) const {
        require_vertex(v);
        Neighbourhood nb{v, {}};
        nb.members.reserve(static_cast<std::size_t>(degree(v)));
        append_neighbours(v, nb.members);
        return nb;
    }

    // Non-typical-vertex oracle D(x). Default: D is empty.
    virtual Typicality nontypical(VertexId x, VertexId y) const {
        require_vertex(x);
        require_vertex(y);
        return Typicality::Typical;
    }

    // Same oracle when the caller already knows dist(x, y); saves families
    // whose answer depends only on the distance a BFS.
    virtual Typicality nontypical_at(VertexId x, VertexId y, int /*dist*/) const {
        return nontypical(x, y);
    }

    virtual bool supports_projection() const { return false; }

    // Constructs the projection subgraph for y at distance ell from x.
    // Throws UnsupportedError when the family has no projection.
    virtual ProjectionHandle projection(VertexId /*x*/, VertexId /*y*/) const {
        throw UnsupportedError(name() + ": projection not supported");
    }

    // Isomorphism-class tag of (graph, center) for callers that may reuse
    // center-local results across isomorphic instances. Empty = no claim.
    virtual std::string recert_class(VertexId /*center*/) const { return ""; }

    void require_vertex(VertexId v) const {
        if (!is_vertex(v)) {
            throw InvalidVertexError(name() + ": invalid vertex encoding " + std::to_string(v));
        }
    }
};

}  // namespace bootperc
