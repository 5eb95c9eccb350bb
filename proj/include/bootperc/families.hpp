// Concrete implicit graph families: hypercube, Cartesian products (grids,
// tori, Hamming graphs), the middle layer graph, the odd graph, the folded
// hypercube, and explicit edge-list graphs. Each family carries its
// canonical class parameter K, non-typical-vertex oracle and projection
// construction.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bootperc/bits.hpp"
#include "bootperc/graph.hpp"

namespace bootperc {

// Small explicit connected base graph for Cartesian products. Sizes are
// bounded; all-pairs distances are precomputed at construction.
class BaseGraph {
public:
    static BaseGraph path(int k);      // P_k
    static BaseGraph cycle(int k);     // C_k, k >= 3
    static BaseGraph complete(int k);  // K_k
    static BaseGraph star(int k);      // K_{1,k}: vertex 0 joined to k leaves
    // "P3" / "C4" / "K5" / "S3" descriptors.
    static BaseGraph parse(const std::string& token);

    // Canonical form of a vertex under the base's automorphisms; used to
    // group isomorphic product slices.
    int orbit_class(int v) const;

    const std::string& label() const { return label_; }
    int size() const { return static_cast<int>(adj_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    const std::vector<int>& neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int dist(int u, int v) const { return dist_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }

private:
    BaseGraph(std::string label, std::vector<std::vector<int>> adj);

    std::string label_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> dist_;
};

struct FamilySpec {
    enum class Kind { Hypercube, Product, Hamming, Torus, Grid, MiddleLayer, Odd, Folded, Explicit };

    Kind kind = Kind::Hypercube;
    int n = 0;                                             // dimension parameter
    int q = 0;                                             // Hamming alphabet size
    std::vector<int> dims;                                 // torus / grid side lengths
    std::vector<BaseGraph> bases;                          // product base graphs
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // explicit edge list
    int explicit_k = 1;                                    // user-supplied K for explicit graphs
};

std::unique_ptr<GraphFamily> make_family(const FamilySpec& spec);

// Edge-list file: one "u v" pair per line, whitespace separated, '#' starts
// a comment, vertices 0..order-1. Must describe a simple connected graph.
FamilySpec parse_edge_list(std::istream& in, int k);
FamilySpec load_edge_list(const std::string& path, int k);

// --- Concrete families ------------------------------------------------

// Q_n on n-bit masks. Encoding == enumeration index.
class HypercubeFamily final : public GraphFamily {
public:
    explicit HypercubeFamily(int n);

    std::string name() const override;
    std::uint64_t order() const override { return 1ULL << n_; }
    int canonical_k() const override { return 2; }
    int min_degree() const override { return n_; }
    int max_degree() const override { return n_; }
    int encoding_bits() const override { return n_; }
    bool is_vertex(VertexId v) const override { return n_ >= 64 || v < (1ULL << n_); }
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId) const override { return n_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;

    int dimension() const { return n_; }

private:
    int n_;
};

// Cartesian product of base graphs. Encoding is the mixed-radix index with
// coordinate 0 least significant, so encoding == enumeration index.
class ProductFamily final : public GraphFamily {
public:
    explicit ProductFamily(std::vector<BaseGraph> bases, std::string name_hint = "");

    std::string name() const override { return name_; }
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return canonical_k_; }
    int min_degree() const override { return min_degree_; }
    int max_degree() const override { return max_degree_; }
    bool is_vertex(VertexId v) const override { return v < order_; }
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId v) const override;
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;
    Typicality nontypical(VertexId x, VertexId y) const override;
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;

    int arity() const { return static_cast<int>(bases_.size()); }
    const BaseGraph& base(int i) const { return bases_[static_cast<std::size_t>(i)]; }
    int coordinate(VertexId v, int i) const;
    // Exact distance: sum of per-coordinate base distances.
    int distance(VertexId x, VertexId y) const;

private:
    std::vector<BaseGraph> bases_;
    std::vector<std::uint64_t> radix_;  // radix_[i] = prod of sizes below i
    std::uint64_t order_;
    int canonical_k_;
    int min_degree_;
    int max_degree_;
    std::string name_;
};

// Middle layer graph: (2n-1)-bit masks of popcount n-1 or n, adjacency by
// single-coordinate flips. Enumeration: lower layer first, each layer in
// ascending mask order.
class MiddleLayerFamily final : public GraphFamily {
public:
    explicit MiddleLayerFamily(int n);

    std::string name() const override;
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return 4; }
    int min_degree() const override { return n_; }
    int max_degree() const override { return n_; }
    int encoding_bits() const override { return width_; }
    bool is_vertex(VertexId v) const override;
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId) const override { return n_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;

    int parameter() const { return n_; }
    int width() const { return width_; }
    // Isometric in the ambient cube: dist = Hamming distance.
    int distance(VertexId x, VertexId y) const { return popcount64(x ^ y); }

private:
    int n_;
    int width_;
    std::uint64_t half_order_;
    std::uint64_t order_;
};

// Odd graph on (n-1)-subsets of [2n-1] as bitmasks, adjacency by
// disjointness. Enumeration ascending by mask.
class OddFamily final : public GraphFamily {
public:
    explicit OddFamily(int n);

    std::string name() const override;
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return 4; }
    int min_degree() const override { return n_; }
    int max_degree() const override { return n_; }
    int encoding_bits() const override { return width_; }
    bool is_vertex(VertexId v) const override;
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId) const override { return n_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;
    Typicality nontypical(VertexId x, VertexId y) const override;
    Typicality nontypical_at(VertexId x, VertexId y, int dist) const override;
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;

    int parameter() const { return n_; }
    int width() const { return width_; }
    // Closed-form Kneser distance: with s = |x & y|, min(2(n-1-s), 2s+1).
    int distance(VertexId x, VertexId y) const;
    // Largest radius for which the local isomorphism onto the middle layer
    // graph is valid (strictly below n-1).
    int local_radius() const { return n_ - 2; }

private:
    int n_;
    int width_;
    std::uint64_t order_;
};

// Folded hypercube: (n-1)-bit masks, cube edges plus antipodal edges,
// n-regular. Encoding == enumeration index.
class FoldedFamily final : public GraphFamily {
public:
    explicit FoldedFamily(int n);

    std::string name() const override;
    std::uint64_t order() const override { return 1ULL << (n_ - 1); }
    int canonical_k() const override { return 3; }
    int min_degree() const override { return n_; }
    int max_degree() const override { return n_; }
    int encoding_bits() const override { return n_ - 1; }
    bool is_vertex(VertexId v) const override { return v < (1ULL << (n_ - 1)); }
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId) const override { return n_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;
    Typicality nontypical(VertexId x, VertexId y) const override;
    Typicality nontypical_at(VertexId x, VertexId y, int dist) const override;
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;

    int parameter() const { return n_; }
    // min(h, n - h) with h the Hamming distance on n-1 bits.
    int distance(VertexId x, VertexId y) const;
    int local_radius() const { return n_ / 2 - 1; }

private:
    int n_;
};

// Explicit simple connected graph from an edge list. D is empty and no
// projection is available.
class ExplicitFamily final : public GraphFamily {
public:
    ExplicitFamily(std::vector<std::vector<std::uint32_t>> adjacency, int k);

    std::string name() const override;
    std::uint64_t order() const override { return adj_.size(); }
    int canonical_k() const override { return k_; }
    int min_degree() const override { return min_degree_; }
    int max_degree() const override { return max_degree_; }
    bool is_vertex(VertexId v) const override { return v < adj_.size(); }
    VertexId vertex_at(std::uint64_t index) const override;
    std::uint64_t index_of(VertexId v) const override;
    int degree(VertexId v) const override;
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override;

private:
    std::vector<std::vector<std::uint32_t>> adj_;
    int k_;
    int min_degree_;
    int max_degree_;
};

// Verifies the explicit local isomorphism between balls of radius `radius`:
// either (odd n, middle layer n) with the complement-on-odd-spheres map and
// radius < n-1, or (folded n, hypercube n) with the coordinate lift and
// radius < floor(n/2). Throws RadiusRangeError outside the validity range
// and UnsupportedError for any other pairing.
bool local_iso_check(const GraphFamily& family_a, VertexId x_a, const GraphFamily& family_b,
                     VertexId x_b, int radius);

}  // namespace bootperc
