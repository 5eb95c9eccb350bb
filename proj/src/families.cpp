#include "bootperc/families.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bootperc/bits.hpp"
#include "bootperc/traversal.hpp"

namespace bootperc {

namespace {

constexpr int kMaxEncodingBits = 63;

std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~0ULL : (1ULL << bits) - 1;
}

}  // namespace

// --- BaseGraph ---------------------------------------------------------

BaseGraph::BaseGraph(std::string label, std::vector<std::vector<int>> adj)
    : label_(std::move(label)), adj_(std::move(adj)) {
    const int n = size();
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    // All-pairs BFS; bases are tiny.
    dist_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int s = 0; s < n; ++s) {
        auto& row = dist_[static_cast<std::size_t>(s)];
        row[static_cast<std::size_t>(s)] = 0;
        std::vector<int> frontier{s};
        for (int d = 1; !frontier.empty(); ++d) {
            std::vector<int> next;
            for (int v : frontier) {
                for (int w : adj_[static_cast<std::size_t>(v)]) {
                    if (row[static_cast<std::size_t>(w)] < 0) {
                        row[static_cast<std::size_t>(w)] = d;
                        next.push_back(w);
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (dist_[0][static_cast<std::size_t>(v)] < 0) {
            throw std::invalid_argument("base graph " + label_ + " is disconnected");
        }
    }
}

BaseGraph BaseGraph::path(int k) {
    if (k < 2) throw std::invalid_argument("path base needs at least 2 vertices");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
    for (int v = 0; v + 1 < k; ++v) {
        adj[static_cast<std::size_t>(v)].push_back(v + 1);
        adj[static_cast<std::size_t>(v + 1)].push_back(v);
    }
    return BaseGraph("P" + std::to_string(k), std::move(adj));
}

BaseGraph BaseGraph::cycle(int k) {
    if (k < 3) throw std::invalid_argument("cycle base needs at least 3 vertices");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
    for (int v = 0; v < k; ++v) {
        adj[static_cast<std::size_t>(v)].push_back((v + 1) % k);
        adj[static_cast<std::size_t>((v + 1) % k)].push_back(v);
    }
    return BaseGraph("C" + std::to_string(k), std::move(adj));
}

BaseGraph BaseGraph::complete(int k) {
    if (k < 2) throw std::invalid_argument("complete base needs at least 2 vertices");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
    for (int u = 0; u < k; ++u) {
        for (int v = 0; v < k; ++v) {
            if (u != v) adj[static_cast<std::size_t>(u)].push_back(v);
        }
    }
    return BaseGraph("K" + std::to_string(k), std::move(adj));
}

BaseGraph BaseGraph::star(int k) {
    if (k < 1) throw std::invalid_argument("star base needs at least 1 leaf");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k) + 1);
    for (int leaf = 1; leaf <= k; ++leaf) {
        adj[0].push_back(leaf);
        adj[static_cast<std::size_t>(leaf)].push_back(0);
    }
    return BaseGraph("S" + std::to_string(k), std::move(adj));
}

BaseGraph BaseGraph::parse(const std::string& token) {
    if (token.size() < 2) throw std::invalid_argument("bad base graph descriptor: " + token);
    const char kind = static_cast<char>(std::toupper(token[0]));
    int k = 0;
    try {
        k = std::stoi(token.substr(1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad base graph descriptor: " + token);
    }
    switch (kind) {
        case 'P': return path(k);
        case 'C': return cycle(k);
        case 'K': return complete(k);
        case 'S': return star(k);
        default: throw std::invalid_argument("bad base graph descriptor: " + token);
    }
}

int BaseGraph::orbit_class(int v) const {
    switch (label_[0]) {
        case 'C':
        case 'K': return 0;                                   // vertex-transitive
        case 'P': return std::min(v, size() - 1 - v);          // reversal
        case 'S': return v == 0 ? 0 : 1;                       // center vs leaf
        default: return v;
    }
}

// --- Subcube projection view (hypercube and folded hypercube) ----------

namespace {

// Subcube of Q_bits: coordinates in frozen_mask pinned at frozen_vals.
class SubcubeView final : public GraphFamily {
public:
    SubcubeView(int bits, std::uint64_t frozen_mask, std::uint64_t frozen_vals)
        : bits_(bits), frozen_mask_(frozen_mask), frozen_vals_(frozen_vals & frozen_mask) {
        for (int i = 0; i < bits_; ++i) {
            if (!((frozen_mask_ >> i) & 1ULL)) free_bits_.push_back(i);
        }
    }

    std::string name() const override {
        return "subcube(" + std::to_string(free_bits_.size()) + " of Q" + std::to_string(bits_) + ")";
    }
    std::uint64_t order() const override { return 1ULL << free_bits_.size(); }
    int canonical_k() const override { return 2; }
    int min_degree() const override { return static_cast<int>(free_bits_.size()); }
    int max_degree() const override { return static_cast<int>(free_bits_.size()); }
    int encoding_bits() const override { return bits_; }
    bool is_vertex(VertexId v) const override {
        return v <= low_mask(bits_) && (v & frozen_mask_) == frozen_vals_;
    }
    VertexId vertex_at(std::uint64_t index) const override {
        if (index >= order()) throw InvalidVertexError("subcube index out of range");
        VertexId v = frozen_vals_;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((index >> i) & 1ULL) v |= (1ULL << free_bits_[i]);
        }
        return v;
    }
    std::uint64_t index_of(VertexId v) const override {
        require_vertex(v);
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((v >> free_bits_[i]) & 1ULL) index |= (1ULL << i);
        }
        return index;
    }
    int degree(VertexId) const override { return static_cast<int>(free_bits_.size()); }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override {
        require_vertex(v);
        for (int b : free_bits_) out.push_back(v ^ (1ULL << b));
    }
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;
    std::string recert_class(VertexId) const override {
        return "subcube:" + std::to_string(free_bits_.size());
    }

private:
    int bits_;
    std::uint64_t frozen_mask_;
    std::uint64_t frozen_vals_;
    std::vector<int> free_bits_;
};

ProjectionHandle subcube_projection(const GraphFamily& parent, int bits,
                                    std::uint64_t already_frozen_mask, VertexId x, VertexId y) {
    parent.require_vertex(x);
    parent.require_vertex(y);
    if (x == y) throw InvalidVertexError("projection requires distinct vertices");
    const std::uint64_t diff = x ^ y;
    ProjectionHandle handle;
    handle.parent = &parent;
    handle.anchor = x;
    handle.target = y;
    handle.radius = popcount64(diff);
    handle.subgraph =
        std::make_unique<SubcubeView>(bits, already_frozen_mask | diff, y);
    return handle;
}

ProjectionHandle SubcubeView::projection(VertexId x, VertexId y) const {
    return subcube_projection(*this, bits_, frozen_mask_, x, y);
}

}  // namespace

// --- HypercubeFamily ----------------------------------------------------

HypercubeFamily::HypercubeFamily(int n) : n_(n) {
    if (n < 1 || n > kMaxEncodingBits) {
        throw std::invalid_argument("hypercube dimension must be in [1, 63]");
    }
}

std::string HypercubeFamily::name() const { return "hypercube(" + std::to_string(n_) + ")"; }

VertexId HypercubeFamily::vertex_at(std::uint64_t index) const {
    if (index >= order()) throw InvalidVertexError("hypercube index out of range");
    return index;
}

std::uint64_t HypercubeFamily::index_of(VertexId v) const {
    require_vertex(v);
    return v;
}

void HypercubeFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    for (int i = 0; i < n_; ++i) out.push_back(v ^ (1ULL << i));
}

ProjectionHandle HypercubeFamily::projection(VertexId x, VertexId y) const {
    return subcube_projection(*this, n_, 0, x, y);
}

// --- ProductFamily -------------------------------------------------------

ProductFamily::ProductFamily(std::vector<BaseGraph> bases, std::string name_hint)
    : bases_(std::move(bases)) {
    if (bases_.empty()) throw std::invalid_argument("product needs at least one base graph");
    order_ = 1;
    canonical_k_ = 2;
    min_degree_ = 0;
    max_degree_ = 0;
    radix_.reserve(bases_.size());
    int min_sum = 0, max_sum = 0;
    std::string label;
    for (const auto& base : bases_) {
        if (base.size() < 2) throw std::invalid_argument("product base graphs need >= 2 vertices");
        radix_.push_back(order_);
        const auto sz = static_cast<std::uint64_t>(base.size());
        if (order_ > (1ULL << kMaxEncodingBits) / sz) {
            throw std::invalid_argument("product order exceeds 63-bit encodings");
        }
        order_ *= sz;
        canonical_k_ = std::max(canonical_k_, base.size());
        int dmin = base.size(), dmax = 0;
        for (int v = 0; v < base.size(); ++v) {
            dmin = std::min(dmin, base.degree(v));
            dmax = std::max(dmax, base.degree(v));
        }
        min_sum += dmin;
        max_sum += dmax;
        if (!label.empty()) label += "x";
        label += base.label();
    }
    min_degree_ = min_sum;
    max_degree_ = max_sum;
    name_ = name_hint.empty() ? "product(" + label + ")" : std::move(name_hint);
}

VertexId ProductFamily::vertex_at(std::uint64_t index) const {
    if (index >= order_) throw InvalidVertexError("product index out of range");
    return index;
}

std::uint64_t ProductFamily::index_of(VertexId v) const {
    require_vertex(v);
    return v;
}

int ProductFamily::coordinate(VertexId v, int i) const {
    return static_cast<int>((v / radix_[static_cast<std::size_t>(i)]) %
                            static_cast<std::uint64_t>(bases_[static_cast<std::size_t>(i)].size()));
}

int ProductFamily::degree(VertexId v) const {
    require_vertex(v);
    int d = 0;
    for (int i = 0; i < arity(); ++i) d += bases_[static_cast<std::size_t>(i)].degree(coordinate(v, i));
    return d;
}

void ProductFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    for (int i = 0; i < arity(); ++i) {
        const auto& base = bases_[static_cast<std::size_t>(i)];
        const std::uint64_t radix = radix_[static_cast<std::size_t>(i)];
        const int c = coordinate(v, i);
        const VertexId rest = v - static_cast<std::uint64_t>(c) * radix;
        for (int w : base.neighbours(c)) {
            out.push_back(rest + static_cast<std::uint64_t>(w) * radix);
        }
    }
}

int ProductFamily::distance(VertexId x, VertexId y) const {
    int d = 0;
    for (int i = 0; i < arity(); ++i) {
        d += bases_[static_cast<std::size_t>(i)].dist(coordinate(x, i), coordinate(y, i));
    }
    return d;
}

Typicality ProductFamily::nontypical(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    // y is non-typical for x iff some differing coordinate contributes more
    // than one step, i.e. |I(x,y)| != dist(x,y).
    for (int i = 0; i < arity(); ++i) {
        const int cx = coordinate(x, i), cy = coordinate(y, i);
        if (cx != cy && bases_[static_cast<std::size_t>(i)].dist(cx, cy) >= 2) {
            return Typicality::NonTypical;
        }
    }
    return Typicality::Typical;
}

namespace {

// Product subgraph with the coordinates in `frozen` pinned at y's values.
class ProductSliceView final : public GraphFamily {
public:
    ProductSliceView(const ProductFamily* parent, std::vector<bool> frozen, VertexId anchor_vals)
        : parent_(parent), frozen_(std::move(frozen)), vals_(anchor_vals) {
        order_ = 1;
        min_degree_ = 0;
        max_degree_ = 0;
        for (int i = 0; i < parent_->arity(); ++i) {
            if (frozen_[static_cast<std::size_t>(i)]) continue;
            free_.push_back(i);
            order_ *= static_cast<std::uint64_t>(parent_->base(i).size());
            int dmin = parent_->base(i).size(), dmax = 0;
            for (int v = 0; v < parent_->base(i).size(); ++v) {
                dmin = std::min(dmin, parent_->base(i).degree(v));
                dmax = std::max(dmax, parent_->base(i).degree(v));
            }
            min_degree_ += dmin;
            max_degree_ += dmax;
        }
    }

    std::string name() const override { return parent_->name() + "-slice"; }
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return parent_->canonical_k(); }
    int min_degree() const override { return min_degree_; }
    int max_degree() const override { return max_degree_; }
    bool is_vertex(VertexId v) const override {
        if (!parent_->is_vertex(v)) return false;
        for (int i = 0; i < parent_->arity(); ++i) {
            if (frozen_[static_cast<std::size_t>(i)] &&
                parent_->coordinate(v, i) != parent_->coordinate(vals_, i)) {
                return false;
            }
        }
        return true;
    }
    VertexId vertex_at(std::uint64_t index) const override {
        if (index >= order_) throw InvalidVertexError("slice index out of range");
        VertexId v = 0;
        // Start from the frozen values, then fill free coordinates.
        for (int i = 0; i < parent_->arity(); ++i) {
            if (frozen_[static_cast<std::size_t>(i)]) {
                v += static_cast<std::uint64_t>(parent_->coordinate(vals_, i)) * radix_of(i);
            }
        }
        for (int fi : free_) {
            const auto sz = static_cast<std::uint64_t>(parent_->base(fi).size());
            v += (index % sz) * radix_of(fi);
            index /= sz;
        }
        return v;
    }
    std::uint64_t index_of(VertexId v) const override {
        require_vertex(v);
        std::uint64_t index = 0, scale = 1;
        for (int fi : free_) {
            index += static_cast<std::uint64_t>(parent_->coordinate(v, fi)) * scale;
            scale *= static_cast<std::uint64_t>(parent_->base(fi).size());
        }
        return index;
    }
    int degree(VertexId v) const override {
        require_vertex(v);
        int d = 0;
        for (int fi : free_) d += parent_->base(fi).degree(parent_->coordinate(v, fi));
        return d;
    }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override {
        require_vertex(v);
        for (int fi : free_) {
            const auto& base = parent_->base(fi);
            const std::uint64_t radix = radix_of(fi);
            const int c = parent_->coordinate(v, fi);
            const VertexId rest = v - static_cast<std::uint64_t>(c) * radix;
            for (int w : base.neighbours(c)) {
                out.push_back(rest + static_cast<std::uint64_t>(w) * radix);
            }
        }
    }
    Typicality nontypical(VertexId x, VertexId y) const override {
        require_vertex(x);
        require_vertex(y);
        for (int fi : free_) {
            const int cx = parent_->coordinate(x, fi), cy = parent_->coordinate(y, fi);
            if (cx != cy && parent_->base(fi).dist(cx, cy) >= 2) return Typicality::NonTypical;
        }
        return Typicality::Typical;
    }
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override {
        require_vertex(x);
        require_vertex(y);
        if (x == y) throw InvalidVertexError("projection requires distinct vertices");
        auto frozen = frozen_;
        for (int fi : free_) {
            if (parent_->coordinate(x, fi) != parent_->coordinate(y, fi)) {
                frozen[static_cast<std::size_t>(fi)] = true;
            }
        }
        ProjectionHandle handle;
        handle.parent = this;
        handle.anchor = x;
        handle.target = y;
        handle.radius = parent_->distance(x, y);
        handle.subgraph = std::make_unique<ProductSliceView>(parent_, std::move(frozen), y);
        return handle;
    }
    std::string recert_class(VertexId center) const override {
        std::vector<std::string> parts;
        for (int fi : free_) {
            parts.push_back(parent_->base(fi).label() + "@" +
                            std::to_string(parent_->base(fi).orbit_class(
                                parent_->coordinate(center, fi))));
        }
        std::sort(parts.begin(), parts.end());
        std::string s = "product-slice:";
        for (const auto& part : parts) s += part + ",";
        return s;
    }

private:
    std::uint64_t radix_of(int i) const {
        std::uint64_t r = 1;
        for (int j = 0; j < i; ++j) r *= static_cast<std::uint64_t>(parent_->base(j).size());
        return r;
    }

    const ProductFamily* parent_;
    std::vector<bool> frozen_;
    VertexId vals_;
    std::vector<int> free_;
    std::uint64_t order_;
    int min_degree_;
    int max_degree_;
};

}  // namespace

ProjectionHandle ProductFamily::projection(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    if (x == y) throw InvalidVertexError("projection requires distinct vertices");
    std::vector<bool> frozen(static_cast<std::size_t>(arity()), false);
    for (int i = 0; i < arity(); ++i) {
        if (coordinate(x, i) != coordinate(y, i)) frozen[static_cast<std::size_t>(i)] = true;
    }
    ProjectionHandle handle;
    handle.parent = this;
    handle.anchor = x;
    handle.target = y;
    handle.radius = distance(x, y);
    handle.subgraph = std::make_unique<ProductSliceView>(this, std::move(frozen), y);
    return handle;
}

// --- MiddleLayerFamily ----------------------------------------------------

MiddleLayerFamily::MiddleLayerFamily(int n) : n_(n), width_(2 * n - 1) {
    if (n < 1 || width_ > kMaxEncodingBits) {
        throw std::invalid_argument("middle layer parameter must be in [1, 32]");
    }
    half_order_ = binomial(width_, n_ - 1);
    order_ = 2 * half_order_;
}

std::string MiddleLayerFamily::name() const { return "middle-layer(" + std::to_string(n_) + ")"; }

bool MiddleLayerFamily::is_vertex(VertexId v) const {
    if (v > low_mask(width_)) return false;
    const int w = popcount64(v);
    return w == n_ - 1 || w == n_;
}

VertexId MiddleLayerFamily::vertex_at(std::uint64_t index) const {
    if (index >= order_) throw InvalidVertexError("middle layer index out of range");
    if (index < half_order_) return subset_unrank(index, n_ - 1);
    return subset_unrank(index - half_order_, n_);
}

std::uint64_t MiddleLayerFamily::index_of(VertexId v) const {
    require_vertex(v);
    const int w = popcount64(v);
    return (w == n_ - 1) ? subset_rank(v) : half_order_ + subset_rank(v);
}

void MiddleLayerFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    const int w = popcount64(v);
    if (w == n_ - 1) {
        // Lower layer: only 0 -> 1 flips stay inside.
        std::uint64_t zeros = ~v & low_mask(width_);
        while (zeros != 0) {
            const std::uint64_t bit = zeros & (~zeros + 1);
            out.push_back(v | bit);
            zeros ^= bit;
        }
    } else {
        std::uint64_t ones = v;
        while (ones != 0) {
            const std::uint64_t bit = ones & (~ones + 1);
            out.push_back(v ^ bit);
            ones ^= bit;
        }
    }
}

namespace {

// Slice of a middle layer graph (possibly already a slice): coordinates in
// frozen_mask pinned, remaining free positions carry a smaller middle layer
// graph. `sub_n` is its parameter.
class MiddleSliceView final : public GraphFamily {
public:
    MiddleSliceView(const GraphFamily* parent, int width, std::uint64_t frozen_mask,
                    std::uint64_t frozen_vals, int sub_n)
        : parent_(parent), width_(width), frozen_mask_(frozen_mask),
          frozen_vals_(frozen_vals & frozen_mask), sub_n_(sub_n) {
        for (int i = 0; i < width_; ++i) {
            if (!((frozen_mask_ >> i) & 1ULL)) free_bits_.push_back(i);
        }
        half_order_ = binomial(static_cast<int>(free_bits_.size()), sub_n_ - 1);
        order_ = 2 * half_order_;
    }

    std::string name() const override { return "middle-layer-slice(" + std::to_string(sub_n_) + ")"; }
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return 4; }
    int min_degree() const override { return sub_n_; }
    int max_degree() const override { return sub_n_; }
    int encoding_bits() const override { return width_; }
    bool is_vertex(VertexId v) const override {
        return parent_->is_vertex(v) && (v & frozen_mask_) == frozen_vals_;
    }
    VertexId vertex_at(std::uint64_t index) const override {
        if (index >= order_) throw InvalidVertexError("slice index out of range");
        const int k = index < half_order_ ? sub_n_ - 1 : sub_n_;
        const std::uint64_t sub = subset_unrank(index < half_order_ ? index : index - half_order_, k);
        return expand(sub);
    }
    std::uint64_t index_of(VertexId v) const override {
        require_vertex(v);
        const std::uint64_t sub = compress(v);
        const int w = popcount64(sub);
        return (w == sub_n_ - 1) ? subset_rank(sub) : half_order_ + subset_rank(sub);
    }
    int degree(VertexId) const override { return sub_n_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override {
        require_vertex(v);
        const std::uint64_t sub = compress(v);
        const int w = popcount64(sub);
        const std::uint64_t free_mask = low_mask(static_cast<int>(free_bits_.size()));
        std::uint64_t flips = (w == sub_n_ - 1) ? (~sub & free_mask) : sub;
        while (flips != 0) {
            const std::uint64_t bit = flips & (~flips + 1);
            out.push_back(expand(sub ^ bit));
            flips ^= bit;
        }
    }
    bool supports_projection() const override { return true; }
    ProjectionHandle projection(VertexId x, VertexId y) const override;
    std::string recert_class(VertexId) const override {
        return "middle-slice:" + std::to_string(sub_n_);
    }

    int parameter() const { return sub_n_; }

private:
    friend ProjectionHandle middle_slice_projection(const GraphFamily& parent, int width,
                                                    std::uint64_t already_frozen, int sub_n,
                                                    VertexId x, VertexId y);

    std::uint64_t expand(std::uint64_t sub) const {
        VertexId v = frozen_vals_;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((sub >> i) & 1ULL) v |= (1ULL << free_bits_[i]);
        }
        return v;
    }
    std::uint64_t compress(VertexId v) const {
        std::uint64_t sub = 0;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((v >> free_bits_[i]) & 1ULL) sub |= (1ULL << i);
        }
        return sub;
    }

    const GraphFamily* parent_;
    int width_;
    std::uint64_t frozen_mask_;
    std::uint64_t frozen_vals_;
    int sub_n_;
    std::vector<int> free_bits_;
    std::uint64_t half_order_;
    std::uint64_t order_;
};

// Shared by MiddleLayerFamily and MiddleSliceView. Freezes the coordinates
// where y differs from x; for odd distances one extra coordinate is frozen
// to balance the pinned ones and zeros (lexicographically least choice).
ProjectionHandle middle_slice_projection(const GraphFamily& parent, int width,
                                         std::uint64_t already_frozen, int sub_n, VertexId x,
                                         VertexId y) {
    parent.require_vertex(x);
    parent.require_vertex(y);
    if (x == y) throw InvalidVertexError("projection requires distinct vertices");
    const std::uint64_t diff = x ^ y;
    const int ell = popcount64(diff);
    std::uint64_t frozen = diff;
    if (ell % 2 != 0) {
        // Pinned ones minus pinned zeros inside `diff` is +-1; fix one more
        // coordinate of the right value outside diff.
        const int ones = popcount64(y & diff);
        const int zeros = ell - ones;
        const std::uint64_t outside = ~(diff | already_frozen) & low_mask(width);
        const std::uint64_t candidates = (ones < zeros) ? (y & outside) : (~y & outside);
        if (candidates == 0) {
            throw UnsupportedError("middle layer projection: no balancing coordinate available");
        }
        frozen |= candidates & (~candidates + 1);
    }
    const int pinned = popcount64(frozen);
    const int new_sub_n = sub_n - pinned / 2;
    if (new_sub_n < 1) throw UnsupportedError("middle layer projection: radius too large");

    ProjectionHandle handle;
    handle.parent = &parent;
    handle.anchor = x;
    handle.target = y;
    handle.radius = ell;
    handle.subgraph = std::make_unique<MiddleSliceView>(&parent, width, already_frozen | frozen,
                                                        y, new_sub_n);
    return handle;
}

ProjectionHandle MiddleSliceView::projection(VertexId x, VertexId y) const {
    return middle_slice_projection(*this, width_, frozen_mask_, sub_n_, x, y);
}

}  // namespace

ProjectionHandle MiddleLayerFamily::projection(VertexId x, VertexId y) const {
    return middle_slice_projection(*this, width_, 0, n_, x, y);
}

// --- OddFamily -------------------------------------------------------------

OddFamily::OddFamily(int n) : n_(n), width_(2 * n - 1) {
    if (n < 2 || width_ > kMaxEncodingBits) {
        throw std::invalid_argument("odd graph parameter must be in [2, 32]");
    }
    order_ = binomial(width_, n_ - 1);
}

std::string OddFamily::name() const { return "odd(" + std::to_string(n_) + ")"; }

bool OddFamily::is_vertex(VertexId v) const {
    return v <= low_mask(width_) && popcount64(v) == n_ - 1;
}

VertexId OddFamily::vertex_at(std::uint64_t index) const {
    if (index >= order_) throw InvalidVertexError("odd graph index out of range");
    return subset_unrank(index, n_ - 1);
}

std::uint64_t OddFamily::index_of(VertexId v) const {
    require_vertex(v);
    return subset_rank(v);
}

void OddFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    // Neighbours are the (n-1)-subsets of the complement; the complement has
    // n elements, so drop each of its bits in turn.
    const std::uint64_t comp = ~v & low_mask(width_);
    const std::size_t first = out.size();
    std::uint64_t bits = comp;
    while (bits != 0) {
        const std::uint64_t bit = bits & (~bits + 1);
        out.push_back(comp ^ bit);
        bits ^= bit;
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

int OddFamily::distance(VertexId x, VertexId y) const {
    const int s = popcount64(x & y);
    return std::min(2 * (n_ - 1 - s), 2 * s + 1);
}

Typicality OddFamily::nontypical(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    return nontypical_at(x, y, distance(x, y));
}

Typicality OddFamily::nontypical_at(VertexId, VertexId, int dist) const {
    // Inherited (empty) through the local isomorphism onto the middle layer
    // graph; beyond its radius the oracle is not defined.
    return dist <= local_radius() ? Typicality::Typical : Typicality::NotEvaluated;
}

namespace {

// Induced subgraph of the odd graph given by the two-clause set system:
// contain P and avoid Q, or contain Q and avoid P. Isomorphic to a middle
// layer graph on the free positions.
class OddSliceView final : public GraphFamily {
public:
    OddSliceView(const OddFamily* parent, std::uint64_t p_mask, std::uint64_t q_mask)
        : parent_(parent), p_(p_mask), q_(q_mask) {
        const std::uint64_t used = p_ | q_;
        for (int i = 0; i < parent_->width(); ++i) {
            if (!((used >> i) & 1ULL)) free_bits_.push_back(i);
        }
        sub_m_ = (static_cast<int>(free_bits_.size()) + 1) / 2;
        free_weight_ = sub_m_ - 1;
        half_order_ = binomial(static_cast<int>(free_bits_.size()), free_weight_);
        order_ = 2 * half_order_;
    }

    std::string name() const override { return "odd-slice(" + std::to_string(sub_m_) + ")"; }
    std::uint64_t order() const override { return order_; }
    int canonical_k() const override { return 4; }
    int min_degree() const override { return sub_m_; }
    int max_degree() const override { return sub_m_; }
    int encoding_bits() const override { return parent_->width(); }
    bool is_vertex(VertexId v) const override {
        if (!parent_->is_vertex(v)) return false;
        return ((v & p_) == p_ && (v & q_) == 0) || ((v & q_) == q_ && (v & p_) == 0);
    }
    VertexId vertex_at(std::uint64_t index) const override {
        if (index >= order_) throw InvalidVertexError("odd slice index out of range");
        const bool second = index >= half_order_;
        const std::uint64_t sub = subset_unrank(second ? index - half_order_ : index, free_weight_);
        return (second ? q_ : p_) | expand(sub);
    }
    std::uint64_t index_of(VertexId v) const override {
        require_vertex(v);
        const bool second = (v & q_) == q_ && (v & p_) == 0;
        const std::uint64_t sub = compress(v);
        return (second ? half_order_ : 0) + subset_rank(sub);
    }
    int degree(VertexId) const override { return sub_m_; }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override {
        require_vertex(v);
        const std::size_t first = out.size();
        std::vector<VertexId> parent_nb;
        parent_->append_neighbours(v, parent_nb);
        for (VertexId w : parent_nb) {
            if (is_vertex(w)) out.push_back(w);
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    }
    bool supports_projection() const override { return false; }
    std::string recert_class(VertexId) const override {
        return "odd-slice:" + std::to_string(sub_m_);
    }

private:
    std::uint64_t expand(std::uint64_t sub) const {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((sub >> i) & 1ULL) v |= (1ULL << free_bits_[i]);
        }
        return v;
    }
    std::uint64_t compress(VertexId v) const {
        std::uint64_t sub = 0;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((v >> free_bits_[i]) & 1ULL) sub |= (1ULL << i);
        }
        return sub;
    }

    const OddFamily* parent_;
    std::uint64_t p_;
    std::uint64_t q_;
    std::vector<int> free_bits_;
    int sub_m_;
    int free_weight_;
    std::uint64_t half_order_;
    std::uint64_t order_;
};

// Lexicographically least k-subset of the set bits of `pool`.
std::uint64_t lex_least_subset(std::uint64_t pool, int k) {
    std::uint64_t picked = 0;
    for (int i = 0; i < k; ++i) {
        if (pool == 0) throw UnsupportedError("odd projection: admissible set exhausted");
        const std::uint64_t bit = pool & (~pool + 1);
        picked |= bit;
        pool ^= bit;
    }
    return picked;
}

}  // namespace

ProjectionHandle OddFamily::projection(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    if (x == y) throw InvalidVertexError("projection requires distinct vertices");
    const int ell = distance(x, y);
    const std::uint64_t ground = low_mask(width_);
    std::uint64_t p_mask = 0, q_mask = 0;
    if (ell % 2 == 0) {
        const int k = ell / 2;
        const std::uint64_t a = x & ~y;              // size k
        const std::uint64_t b = y & ~x;              // size k
        const std::uint64_t a_prime = lex_least_subset(x & y, k);
        const std::uint64_t b_prime = lex_least_subset(~(x | y) & ground, k);
        p_mask = b | a_prime;
        q_mask = b_prime | a;
    } else {
        const int k = (ell - 1) / 2;
        const std::uint64_t a = x & y;               // size k
        const std::uint64_t b = ~(x | y) & ground;   // size k+1
        const std::uint64_t a_prime = lex_least_subset(x & ~y, k);
        const std::uint64_t b_prime = lex_least_subset(y & ~x, k + 1);
        p_mask = b | a_prime;
        q_mask = b_prime | a;
    }
    ProjectionHandle handle;
    handle.parent = this;
    handle.anchor = x;
    handle.target = y;
    handle.radius = ell;
    handle.subgraph = std::make_unique<OddSliceView>(this, p_mask, q_mask);
    return handle;
}

// --- FoldedFamily ------------------------------------------------------------

FoldedFamily::FoldedFamily(int n) : n_(n) {
    if (n < 3 || n - 1 > kMaxEncodingBits) {
        throw std::invalid_argument("folded hypercube parameter must be in [3, 64]");
    }
}

std::string FoldedFamily::name() const { return "folded(" + std::to_string(n_) + ")"; }

VertexId FoldedFamily::vertex_at(std::uint64_t index) const {
    if (index >= order()) throw InvalidVertexError("folded hypercube index out of range");
    return index;
}

std::uint64_t FoldedFamily::index_of(VertexId v) const {
    require_vertex(v);
    return v;
}

void FoldedFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    const std::size_t first = out.size();
    for (int i = 0; i < n_ - 1; ++i) out.push_back(v ^ (1ULL << i));
    out.push_back(~v & low_mask(n_ - 1));  // antipodal partner
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

int FoldedFamily::distance(VertexId x, VertexId y) const {
    const int h = popcount64(x ^ y);
    return std::min(h, n_ - h);
}

Typicality FoldedFamily::nontypical(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    return nontypical_at(x, y, distance(x, y));
}

Typicality FoldedFamily::nontypical_at(VertexId, VertexId, int dist) const {
    return dist <= local_radius() ? Typicality::Typical : Typicality::NotEvaluated;
}

namespace {

// Projected image in the folded hypercube of a subcube of the n-coordinate
// lift (the extra coordinate tracks antipodal moves). Freezing at least two
// coordinates keeps the quotient map injective and adjacency-faithful.
class FoldedSubcubeView final : public GraphFamily {
public:
    FoldedSubcubeView(const FoldedFamily* parent, int n, std::uint64_t frozen_mask,
                      std::uint64_t frozen_vals)
        : parent_(parent), n_(n), frozen_mask_(frozen_mask), frozen_vals_(frozen_vals & frozen_mask) {
        for (int i = 0; i < n_; ++i) {
            if (!((frozen_mask_ >> i) & 1ULL)) free_bits_.push_back(i);
        }
    }

    std::string name() const override {
        return "folded-subcube(" + std::to_string(free_bits_.size()) + ")";
    }
    std::uint64_t order() const override { return 1ULL << free_bits_.size(); }
    int canonical_k() const override { return parent_->canonical_k(); }
    int min_degree() const override { return static_cast<int>(free_bits_.size()); }
    int max_degree() const override { return static_cast<int>(free_bits_.size()); }
    int encoding_bits() const override { return n_ - 1; }
    bool is_vertex(VertexId v) const override {
        if (!parent_->is_vertex(v)) return false;
        return in_subcube(lift0(v)) || in_subcube(lift1(v));
    }
    VertexId vertex_at(std::uint64_t index) const override {
        if (index >= order()) throw InvalidVertexError("folded subcube index out of range");
        std::uint64_t u = frozen_vals_;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((index >> i) & 1ULL) u |= (1ULL << free_bits_[i]);
        }
        return project(u);
    }
    std::uint64_t index_of(VertexId v) const override {
        require_vertex(v);
        const std::uint64_t u = in_subcube(lift0(v)) ? lift0(v) : lift1(v);
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < free_bits_.size(); ++i) {
            if ((u >> free_bits_[i]) & 1ULL) index |= (1ULL << i);
        }
        return index;
    }
    int degree(VertexId) const override { return static_cast<int>(free_bits_.size()); }
    void append_neighbours(VertexId v, std::vector<VertexId>& out) const override {
        require_vertex(v);
        const std::size_t first = out.size();
        std::vector<VertexId> parent_nb;
        parent_->append_neighbours(v, parent_nb);
        for (VertexId w : parent_nb) {
            if (is_vertex(w)) out.push_back(w);
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    }
    bool supports_projection() const override { return false; }
    std::string recert_class(VertexId) const override {
        return "folded-subcube:" + std::to_string(free_bits_.size());
    }

private:
    std::uint64_t lift0(VertexId v) const { return v; }
    std::uint64_t lift1(VertexId v) const {
        return (~v & low_mask(n_ - 1)) | (1ULL << (n_ - 1));
    }
    bool in_subcube(std::uint64_t u) const { return (u & frozen_mask_) == frozen_vals_; }
    VertexId project(std::uint64_t u) const {
        if ((u >> (n_ - 1)) & 1ULL) return ~u & low_mask(n_ - 1);
        return u & low_mask(n_ - 1);
    }

    const FoldedFamily* parent_;
    int n_;
    std::uint64_t frozen_mask_;
    std::uint64_t frozen_vals_;
    std::vector<int> free_bits_;
};

}  // namespace

ProjectionHandle FoldedFamily::projection(VertexId x, VertexId y) const {
    require_vertex(x);
    require_vertex(y);
    if (x == y) throw InvalidVertexError("projection requires distinct vertices");
    const int ell = distance(x, y);
    // Work in the n-coordinate lift anchored at (x, 0).
    const std::uint64_t x_lift = x;
    const int h = popcount64(x ^ y);
    const std::uint64_t y_lift = (h <= n_ - h)
                                     ? y
                                     : ((~y & low_mask(n_ - 1)) | (1ULL << (n_ - 1)));
    const std::uint64_t diff = x_lift ^ y_lift;  // ell bits
    // Freeze the differing coordinates plus the lexicographically least ell
    // agreeing coordinates; 2*ell pinned coordinates keep the image clear of
    // the ball of radius ell-1 around x.
    std::uint64_t agree = ~diff & low_mask(n_);
    std::uint64_t frozen = diff;
    for (int i = 0; i < ell; ++i) {
        if (agree == 0) throw UnsupportedError("folded projection: radius too large");
        const std::uint64_t bit = agree & (~agree + 1);
        frozen |= bit;
        agree ^= bit;
    }
    ProjectionHandle handle;
    handle.parent = this;
    handle.anchor = x;
    handle.target = y;
    handle.radius = ell;
    handle.subgraph = std::make_unique<FoldedSubcubeView>(this, n_, frozen, y_lift);
    return handle;
}

// --- ExplicitFamily -------------------------------------------------------

ExplicitFamily::ExplicitFamily(std::vector<std::vector<std::uint32_t>> adjacency, int k)
    : adj_(std::move(adjacency)), k_(k) {
    if (adj_.empty()) throw std::invalid_argument("explicit graph has no vertices");
    if (k_ < 1) throw std::invalid_argument("explicit graph needs K >= 1");
    min_degree_ = static_cast<int>(adj_.size());
    max_degree_ = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        auto& nb = adj_[v];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
            throw std::invalid_argument("explicit graph has parallel edges");
        }
        for (std::uint32_t w : nb) {
            if (w == v) throw std::invalid_argument("explicit graph has a self-loop");
            if (w >= adj_.size()) throw std::invalid_argument("explicit graph edge out of range");
        }
        min_degree_ = std::min(min_degree_, static_cast<int>(nb.size()));
        max_degree_ = std::max(max_degree_, static_cast<int>(nb.size()));
    }
    // Connectivity check.
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    if (visited != adj_.size()) throw std::invalid_argument("explicit graph is disconnected");
}

std::string ExplicitFamily::name() const {
    return "explicit(" + std::to_string(adj_.size()) + ")";
}

VertexId ExplicitFamily::vertex_at(std::uint64_t index) const {
    if (index >= adj_.size()) throw InvalidVertexError("explicit index out of range");
    return index;
}

std::uint64_t ExplicitFamily::index_of(VertexId v) const {
    require_vertex(v);
    return v;
}

int ExplicitFamily::degree(VertexId v) const {
    require_vertex(v);
    return static_cast<int>(adj_[v].size());
}

void ExplicitFamily::append_neighbours(VertexId v, std::vector<VertexId>& out) const {
    require_vertex(v);
    for (std::uint32_t w : adj_[v]) out.push_back(w);
}

// --- make_family / edge lists ----------------------------------------------

std::unique_ptr<GraphFamily> make_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::Hypercube:
            return std::make_unique<HypercubeFamily>(spec.n);
        case FamilySpec::Kind::Product:
            return std::make_unique<ProductFamily>(spec.bases);
        case FamilySpec::Kind::Hamming: {
            if (spec.n < 1 || spec.q < 2) throw std::invalid_argument("hamming needs n >= 1, q >= 2");
            std::vector<BaseGraph> bases(static_cast<std::size_t>(spec.n),
                                         BaseGraph::complete(spec.q));
            return std::make_unique<ProductFamily>(
                std::move(bases), "hamming(" + std::to_string(spec.n) + "," + std::to_string(spec.q) + ")");
        }
        case FamilySpec::Kind::Torus: {
            if (spec.dims.empty()) throw std::invalid_argument("torus needs dimensions");
            std::vector<BaseGraph> bases;
            std::string label;
            for (int d : spec.dims) {
                bases.push_back(BaseGraph::cycle(d));
                label += (label.empty() ? "" : "x") + std::to_string(d);
            }
            return std::make_unique<ProductFamily>(std::move(bases), "torus(" + label + ")");
        }
        case FamilySpec::Kind::Grid: {
            if (spec.dims.empty()) throw std::invalid_argument("grid needs dimensions");
            std::vector<BaseGraph> bases;
            std::string label;
            for (int d : spec.dims) {
                bases.push_back(BaseGraph::path(d));
                label += (label.empty() ? "" : "x") + std::to_string(d);
            }
            return std::make_unique<ProductFamily>(std::move(bases), "grid(" + label + ")");
        }
        case FamilySpec::Kind::MiddleLayer:
            return std::make_unique<MiddleLayerFamily>(spec.n);
        case FamilySpec::Kind::Odd:
            return std::make_unique<OddFamily>(spec.n);
        case FamilySpec::Kind::Folded:
            return std::make_unique<FoldedFamily>(spec.n);
        case FamilySpec::Kind::Explicit: {
            std::uint32_t max_vertex = 0;
            for (const auto& [u, v] : spec.edges) max_vertex = std::max({max_vertex, u, v});
            std::vector<std::vector<std::uint32_t>> adj(max_vertex + 1);
            for (const auto& [u, v] : spec.edges) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            return std::make_unique<ExplicitFamily>(std::move(adj), spec.explicit_k);
        }
    }
    throw std::invalid_argument("unknown family kind");
}

FamilySpec parse_edge_list(std::istream& in, int k) {
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::Explicit;
    spec.explicit_k = k;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::uint32_t u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v)) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": expected two vertex ids");
        }
        spec.edges.emplace_back(u, v);
    }
    if (spec.edges.empty()) throw std::invalid_argument("edge list is empty");
    return spec;
}

FamilySpec load_edge_list(const std::string& path, int k) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open edge list file: " + path);
    return parse_edge_list(in, k);
}

// --- Local isomorphism checks ----------------------------------------------

namespace {

// Gathers every edge inside the ball (by sorted vertex pairs) and checks the
// mapped pairs are exactly the edges of the image ball.
bool balls_isomorphic(const GraphFamily& ga, const BallView& ball_a, const GraphFamily& gb,
                      const BallView& ball_b,
                      const std::unordered_map<VertexId, VertexId>& phi) {
    // Bijectivity onto ball_b, layer by layer.
    if (ball_a.layers.size() != ball_b.layers.size()) return false;
    for (std::size_t i = 0; i < ball_a.layers.size(); ++i) {
        if (ball_a.layers[i].size() != ball_b.layers[i].size()) return false;
        std::vector<VertexId> mapped;
        mapped.reserve(ball_a.layers[i].size());
        for (VertexId v : ball_a.layers[i]) {
            auto it = phi.find(v);
            if (it == phi.end()) return false;
            mapped.push_back(it->second);
        }
        std::sort(mapped.begin(), mapped.end());
        if (std::unique(mapped.begin(), mapped.end()) != mapped.end()) return false;
        if (mapped != ball_b.layers[i]) return false;
    }

    // Edge preservation plus matching edge counts.
    std::unordered_set<VertexId> in_a, in_b;
    for (const auto& layer : ball_a.layers) in_a.insert(layer.begin(), layer.end());
    for (const auto& layer : ball_b.layers) in_b.insert(layer.begin(), layer.end());

    std::uint64_t edges_a = 0, edges_b = 0;
    std::vector<VertexId> nb;
    for (const auto& layer : ball_a.layers) {
        for (VertexId u : layer) {
            nb.clear();
            ga.append_neighbours(u, nb);
            for (VertexId v : nb) {
                if (!in_a.count(v) || v < u) continue;
                ++edges_a;
                // phi(u) ~ phi(v) must hold in gb.
                const VertexId pu = phi.at(u), pv = phi.at(v);
                std::vector<VertexId> nb_b;
                gb.append_neighbours(pu, nb_b);
                if (std::find(nb_b.begin(), nb_b.end(), pv) == nb_b.end()) return false;
            }
        }
    }
    for (const auto& layer : ball_b.layers) {
        for (VertexId u : layer) {
            nb.clear();
            gb.append_neighbours(u, nb);
            for (VertexId v : nb) {
                if (in_b.count(v) && v > u) ++edges_b;
            }
        }
    }
    return edges_a == edges_b;
}

}  // namespace

bool local_iso_check(const GraphFamily& family_a, VertexId x_a, const GraphFamily& family_b,
                     VertexId x_b, int radius) {
    if (radius < 0) throw RadiusRangeError("negative radius");

    if (const auto* odd = dynamic_cast<const OddFamily*>(&family_a)) {
        const auto* middle = dynamic_cast<const MiddleLayerFamily*>(&family_b);
        if (middle == nullptr || middle->parameter() != odd->parameter()) {
            throw UnsupportedError("local isomorphism: expected matching middle layer graph");
        }
        if (radius >= odd->parameter() - 1) {
            throw RadiusRangeError("odd/middle local isomorphism needs radius < n-1");
        }
        odd->require_vertex(x_a);
        if (x_b != x_a) {
            throw UnsupportedError("odd/middle local isomorphism anchors at the same subset mask");
        }
        const BallView ball_a = ball(family_a, x_a, radius);
        const BallView ball_b = ball(family_b, x_b, radius);
        // Even spheres map to themselves, odd spheres to their complements.
        const std::uint64_t ground = (1ULL << odd->width()) - 1;
        std::unordered_map<VertexId, VertexId> phi;
        for (std::size_t depth = 0; depth < ball_a.layers.size(); ++depth) {
            for (VertexId v : ball_a.layers[depth]) {
                phi[v] = (depth % 2 == 0) ? v : (~v & ground);
            }
        }
        return balls_isomorphic(family_a, ball_a, family_b, ball_b, phi);
    }

    if (const auto* folded = dynamic_cast<const FoldedFamily*>(&family_a)) {
        const auto* cube = dynamic_cast<const HypercubeFamily*>(&family_b);
        if (cube == nullptr || cube->dimension() != folded->parameter()) {
            throw UnsupportedError("local isomorphism: expected matching hypercube");
        }
        const int n = folded->parameter();
        if (radius >= n / 2) {
            throw RadiusRangeError("folded/cube local isomorphism needs radius < floor(n/2)");
        }
        folded->require_vertex(x_a);
        cube->require_vertex(x_b);
        const BallView ball_b = ball(family_b, x_b, radius);
        const BallView ball_a = ball(family_a, x_a, radius);
        // Map the cube ball onto the folded ball through the antipodal
        // quotient, re-anchored at x_a; invert it for the check.
        const std::uint64_t folded_mask = (1ULL << (n - 1)) - 1;
        // Build cube -> folded through the quotient, then invert; the
        // inversion doubles as the injectivity check.
        std::unordered_map<VertexId, VertexId> phi;  // folded -> cube
        std::unordered_map<VertexId, VertexId> cube_to_folded;
        for (const auto& layer : ball_b.layers) {
            for (VertexId u : layer) {
                const std::uint64_t w = u ^ x_b;
                VertexId rho;
                if ((w >> (n - 1)) & 1ULL) {
                    rho = ~w & folded_mask;
                } else {
                    rho = w & folded_mask;
                }
                cube_to_folded[u] = x_a ^ rho;
            }
        }
        for (const auto& [u, v] : cube_to_folded) {
            if (!phi.emplace(v, u).second) return false;  // collision: not injective
        }
        return balls_isomorphic(family_a, ball_a, family_b, ball_b, phi);
    }

    throw UnsupportedError("local isomorphism: unsupported family pairing");
}

}  // namespace bootperc
