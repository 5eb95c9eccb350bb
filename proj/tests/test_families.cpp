#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "bootperc/families.hpp"
#include "bootperc/traversal.hpp"
#include "oracle_helpers.hpp"

using namespace bootperc;

namespace {

std::uint64_t binom(int n, int k) { return binomial(n, k); }

std::vector<std::unique_ptr<GraphFamily>> desk_families() {
    std::vector<std::unique_ptr<GraphFamily>> graphs;
    graphs.push_back(std::make_unique<HypercubeFamily>(6));
    graphs.push_back(std::make_unique<MiddleLayerFamily>(4));
    graphs.push_back(std::make_unique<OddFamily>(4));
    graphs.push_back(std::make_unique<FoldedFamily>(6));
    FamilySpec torus{FamilySpec::Kind::Torus, 0, 0, {4, 4}, {}, {}, 1};
    graphs.push_back(make_family(torus));
    FamilySpec hamming{FamilySpec::Kind::Hamming, 3, 3, {}, {}, {}, 1};
    graphs.push_back(make_family(hamming));
    return graphs;
}

}  // namespace

TEST_CASE("closed-form orders and regularity at small parameters") {
    for (int n = 1; n <= 8; ++n) {
        HypercubeFamily cube(n);
        CHECK(cube.order() == (1ULL << n));
        CHECK(cube.min_degree() == n);
    }
    for (int n = 1; n <= 8; ++n) {
        MiddleLayerFamily middle(n);
        CHECK(middle.order() == 2 * binom(2 * n - 1, n - 1));
        CHECK(middle.min_degree() == n);
        CHECK(middle.max_degree() == n);
    }
    for (int n = 2; n <= 8; ++n) {
        OddFamily odd(n);
        CHECK(odd.order() == binom(2 * n - 1, n - 1));
        CHECK(odd.min_degree() == n);
    }
    for (int n = 3; n <= 8; ++n) {
        FoldedFamily folded(n);
        CHECK(folded.order() == (1ULL << (n - 1)));
        CHECK(folded.min_degree() == n);
    }
}

TEST_CASE("measured degrees match the declared ones") {
    for (const auto& graph : desk_families()) {
        int dmin = 1 << 30, dmax = 0;
        std::vector<VertexId> nb;
        for (std::uint64_t i = 0; i < graph->order(); ++i) {
            const VertexId v = graph->vertex_at(i);
            nb.clear();
            graph->append_neighbours(v, nb);
            CHECK(static_cast<int>(nb.size()) == graph->degree(v));
            CHECK(std::set<VertexId>(nb.begin(), nb.end()).size() == nb.size());
            dmin = std::min(dmin, static_cast<int>(nb.size()));
            dmax = std::max(dmax, static_cast<int>(nb.size()));
        }
        CHECK(dmin == graph->min_degree());
        CHECK(dmax == graph->max_degree());
    }
}

TEST_CASE("hypercube 5 has order 32") {
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::Hypercube;
    spec.n = 5;
    CHECK(make_family(spec)->order() == 32);
}

TEST_CASE("middle layer 2 is the 6-cycle") {
    MiddleLayerFamily middle(2);
    CHECK(middle.order() == 6);
    CHECK(middle.min_degree() == 2);
    CHECK(middle.max_degree() == 2);
    const auto adj = oracle::adjacency_map(middle);
    CHECK(oracle::girth(adj) == 6);
    // Oracle: independently enumerate length-3 vectors of weight 1 or 2 with
    // single-coordinate adjacency and compare edge sets.
    oracle::AdjacencyMap expected;
    for (VertexId u = 0; u < 8; ++u) {
        const int wu = popcount64(u);
        if (wu != 1 && wu != 2) continue;
        for (VertexId v = 0; v < 8; ++v) {
            const int wv = popcount64(v);
            if ((wv == 1 || wv == 2) && popcount64(u ^ v) == 1) expected[u].insert(v);
        }
    }
    CHECK(adj == expected);
}

TEST_CASE("odd 3 has the Petersen fingerprint") {
    OddFamily odd(3);
    CHECK(odd.order() == 10);
    CHECK(odd.min_degree() == 3);
    CHECK(odd.max_degree() == 3);
    const auto adj = oracle::adjacency_map(odd);
    CHECK(oracle::girth(adj) == 5);
    int diameter = 0;
    for (const auto& [v, unused] : adj) {
        (void)unused;
        for (const auto& [w, d] : oracle::bfs_distances(adj, v)) {
            (void)w;
            diameter = std::max(diameter, d);
        }
    }
    CHECK(diameter == 2);
}

TEST_CASE("neighbours of {1,2} in the odd graph on [5]") {
    OddFamily odd(3);
    const auto nb = odd.neighbourhood(0b00011);
    CHECK(std::set<VertexId>(nb.members.begin(), nb.members.end()) ==
          std::set<VertexId>{0b01100, 0b10100, 0b11000});  // {3,4},{3,5},{4,5}
}

TEST_CASE("folded 3 is K4: neighbours of 00") {
    FoldedFamily folded(3);
    const auto nb = folded.neighbourhood(0b00);
    CHECK(std::set<VertexId>(nb.members.begin(), nb.members.end()) ==
          std::set<VertexId>{0b01, 0b10, 0b11});
}

TEST_CASE("middle layer 4 is 4-regular") {
    MiddleLayerFamily middle(4);
    std::vector<VertexId> nb;
    for (std::uint64_t i = 0; i < middle.order(); ++i) {
        nb.clear();
        middle.append_neighbours(middle.vertex_at(i), nb);
        CHECK(nb.size() == 4);
    }
}

TEST_CASE("adjacency symmetry, exhaustively on small families") {
    for (const auto& graph : desk_families()) {
        const auto adj = oracle::adjacency_map(*graph);
        for (const auto& [v, nb] : adj) {
            for (VertexId w : nb) {
                CHECK(adj.at(w).count(v) == 1);
                CHECK(v != w);
            }
        }
    }
}

TEST_CASE("enumeration round-trips through index_of") {
    for (const auto& graph : desk_families()) {
        for (std::uint64_t i = 0; i < graph->order(); ++i) {
            const VertexId v = graph->vertex_at(i);
            CHECK(graph->is_vertex(v));
            CHECK(graph->index_of(v) == i);
        }
    }
}

TEST_CASE("middle layer graphs have girth six") {
    for (int n : {3, 4}) {
        MiddleLayerFamily middle(n);
        CHECK(oracle::girth(oracle::adjacency_map(middle)) == 6);
    }
}

TEST_CASE("the hypercube non-typical set is empty") {
    HypercubeFamily cube(5);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> pick(0, cube.order() - 1);
    for (int rep = 0; rep < 100; ++rep) {
        const VertexId x = pick(rng), y = pick(rng);
        if (x == y) continue;
        CHECK(cube.nontypical(x, y) == Typicality::Typical);
    }
}

TEST_CASE("product non-typical vertices are exactly the distance defect") {
    FamilySpec spec{FamilySpec::Kind::Torus, 0, 0, {4, 4}, {}, {}, 1};
    auto torus = make_family(spec);
    const auto* product = dynamic_cast<const ProductFamily*>(torus.get());
    REQUIRE(product != nullptr);

    // x=(0,0), y=(2,0): one differing coordinate but distance two on a 4-cycle.
    const VertexId x = 0, y = 2;
    CHECK(product->nontypical(x, y) == Typicality::NonTypical);

    // On an edge-product, (0,0) vs (1,1) differs in two coordinates at
    // distance two: typical.
    FamilySpec edge_square;
    edge_square.kind = FamilySpec::Kind::Product;
    edge_square.bases = {BaseGraph::path(2), BaseGraph::path(2)};
    auto q2 = make_family(edge_square);
    const auto* q2p = dynamic_cast<const ProductFamily*>(q2.get());
    CHECK(q2p->nontypical(0, 3) == Typicality::Typical);

    // Exhaustive: nontypical <=> |I(x,y)| != dist(x,y) via the brute oracle.
    const auto adj = oracle::adjacency_map(*product);
    for (std::uint64_t i = 0; i < product->order(); ++i) {
        for (std::uint64_t j = 0; j < product->order(); ++j) {
            if (i == j) continue;
            int differing = 0;
            for (int c = 0; c < product->arity(); ++c) {
                if (product->coordinate(i, c) != product->coordinate(j, c)) ++differing;
            }
            const int dist = oracle::distance(adj, i, j);
            CHECK(product->distance(i, j) == dist);
            const bool expect_nontypical = differing != dist;
            CHECK((product->nontypical(i, j) == Typicality::NonTypical) == expect_nontypical);
        }
    }
}

TEST_CASE("odd and folded oracles answer inside the local radius only") {
    OddFamily odd(4);
    const auto adj = oracle::adjacency_map(odd);
    for (std::uint64_t i = 0; i < odd.order(); ++i) {
        for (std::uint64_t j = 0; j < odd.order(); ++j) {
            if (i == j) continue;
            const VertexId x = odd.vertex_at(i), y = odd.vertex_at(j);
            const int d = oracle::distance(adj, x, y);
            CHECK(odd.distance(x, y) == d);  // closed-form Kneser distance
            const auto t = odd.nontypical(x, y);
            if (d <= odd.parameter() - 2) {
                CHECK(t == Typicality::Typical);
            } else {
                CHECK(t == Typicality::NotEvaluated);
            }
        }
    }
    FoldedFamily folded(6);
    const auto fadj = oracle::adjacency_map(folded);
    for (std::uint64_t i = 0; i < folded.order(); ++i) {
        for (std::uint64_t j = 0; j < folded.order(); ++j) {
            if (i == j) continue;
            const int d = oracle::distance(fadj, i, j);
            CHECK(folded.distance(i, j) == d);
            const auto t = folded.nontypical(i, j);
            CHECK((t == Typicality::Typical) == (d <= folded.parameter() / 2 - 1));
        }
    }
}

TEST_CASE("hypercube projection freezes the differing coordinates") {
    HypercubeFamily cube(4);
    const auto handle = cube.projection(0b0000, 0b1100);
    REQUIRE(handle.radius == 2);
    const GraphFamily& sub = *handle.subgraph;
    CHECK(sub.order() == 4);
    CHECK(sub.is_vertex(0b1100));
    CHECK(sub.is_vertex(0b1111));
    CHECK(!sub.is_vertex(0b0000));
    CHECK(!sub.is_vertex(0b0100));
    CHECK(sub.degree(0b1100) == 2);
}

TEST_CASE("projections always contain their target and avoid the inner ball") {
    std::vector<std::unique_ptr<GraphFamily>> graphs;
    graphs.push_back(std::make_unique<HypercubeFamily>(6));
    graphs.push_back(std::make_unique<MiddleLayerFamily>(4));
    graphs.push_back(std::make_unique<OddFamily>(4));
    graphs.push_back(std::make_unique<FoldedFamily>(8));
    FamilySpec torus{FamilySpec::Kind::Torus, 0, 0, {4, 4, 4}, {}, {}, 1};
    graphs.push_back(make_family(torus));
    std::mt19937_64 rng(23);
    for (const auto& graph : graphs) {
        std::uniform_int_distribution<std::uint64_t> pick(0, graph->order() - 1);
        int done = 0;
        while (done < 25) {
            const VertexId x = graph->vertex_at(pick(rng));
            const VertexId y = graph->vertex_at(pick(rng));
            if (x == y) continue;
            const int d = distance_within(*graph, x, y, 3);
            if (d == kDistanceExceedsCap) continue;
            ++done;
            const auto handle = graph->projection(x, y);
            const GraphFamily& sub = *handle.subgraph;
            CHECK(handle.radius == d);
            CHECK(sub.is_vertex(y));
            const BallView inner = ball(*graph, x, d - 1);
            for (const auto& layer : inner.layers) {
                for (VertexId w : layer) CHECK(!sub.is_vertex(w));
            }
            // Degree deviation within K*ell over the whole view.
            for (std::uint64_t i = 0; i < sub.order(); ++i) {
                const VertexId w = sub.vertex_at(i);
                CHECK(sub.is_vertex(w));
                CHECK(sub.index_of(w) == i);
                CHECK(std::abs(sub.degree(w) - graph->degree(w)) <=
                      graph->canonical_k() * d);
            }
        }
    }
}

TEST_CASE("middle layer projection at even distance is a smaller middle layer graph") {
    MiddleLayerFamily middle(4);
    // Pick x and a vertex at distance exactly 2.
    const VertexId x = middle.vertex_at(0);
    const auto layer2 = sphere(middle, x, 2);
    REQUIRE(!layer2.empty());
    const auto handle = middle.projection(x, layer2.front());
    const GraphFamily& sub = *handle.subgraph;
    CHECK(sub.order() == 2 * binom(5, 2));  // isomorphic to middle layer 3
    std::vector<VertexId> nb;
    for (std::uint64_t i = 0; i < sub.order(); ++i) {
        nb.clear();
        sub.append_neighbours(sub.vertex_at(i), nb);
        CHECK(nb.size() == 3);
    }
    // Connected, so genuinely one smaller middle layer graph.
    const auto adj = oracle::adjacency_map(sub);
    CHECK(oracle::bfs_distances(adj, sub.vertex_at(0)).size() == sub.order());
}

TEST_CASE("odd graph projections are middle-layer slices of the right order") {
    OddFamily odd(4);
    const VertexId x = odd.vertex_at(0);
    for (int ell = 1; ell <= 3; ++ell) {
        const auto layer = sphere(odd, x, ell);
        REQUIRE(!layer.empty());
        const auto handle = odd.projection(x, layer.front());
        const GraphFamily& sub = *handle.subgraph;
        const int m = odd.parameter() - ell;
        CHECK(sub.order() == 2 * binom(2 * m - 1, m - 1));
        CHECK(sub.degree(layer.front()) == m);
        const auto adj = oracle::adjacency_map(sub);
        for (const auto& [v, nb] : adj) {
            (void)v;
            CHECK(static_cast<int>(nb.size()) == m);
        }
    }
}

TEST_CASE("folded projection is a subcube avoiding the inner ball") {
    FoldedFamily folded(8);
    const VertexId x = 0b0010110;
    for (int ell : {1, 2, 3}) {
        const auto layer = sphere(folded, x, ell);
        REQUIRE(!layer.empty());
        const auto handle = folded.projection(x, layer.front());
        const GraphFamily& sub = *handle.subgraph;
        CHECK(sub.order() == (1ULL << (folded.parameter() - 2 * ell)));
        CHECK(sub.degree(layer.front()) == folded.parameter() - 2 * ell);
        // The view is an induced subcube: regular and connected.
        const auto adj = oracle::adjacency_map(sub);
        CHECK(oracle::bfs_distances(adj, sub.vertex_at(0)).size() == sub.order());
        CHECK(oracle::girth(adj) == (sub.order() >= 4 ? 4 : -1));
    }
}

TEST_CASE("local isomorphism between the odd and middle layer graphs") {
    OddFamily odd(4);
    MiddleLayerFamily middle(4);
    const VertexId x = odd.vertex_at(5);
    CHECK(local_iso_check(odd, x, middle, x, 2));
    CHECK(local_iso_check(odd, x, middle, x, 1));
    CHECK_THROWS_AS(local_iso_check(odd, x, middle, x, 3), RadiusRangeError);
}

TEST_CASE("local isomorphism between the folded hypercube and the hypercube") {
    FoldedFamily folded(6);
    HypercubeFamily cube(6);
    CHECK(local_iso_check(folded, 0b01011, cube, 0b001100, 2));
    CHECK(local_iso_check(folded, 0, cube, 0, 2));
    CHECK_THROWS_AS(local_iso_check(folded, 0, cube, 0, 3), RadiusRangeError);

    FoldedFamily small(3);
    HypercubeFamily cube3(3);
    CHECK_THROWS_AS(local_iso_check(small, 0, cube3, 0, 1), RadiusRangeError);
}

TEST_CASE("unsupported local isomorphism pairings are rejected") {
    HypercubeFamily cube(4);
    OddFamily odd(4);
    CHECK_THROWS_AS(local_iso_check(cube, 0, cube, 0, 1), UnsupportedError);
    CHECK_THROWS_AS(local_iso_check(odd, odd.vertex_at(0), cube, 0, 1), UnsupportedError);
}

TEST_CASE("edge list parsing and validation") {
    std::istringstream good("# triangle plus a tail\n0 1\n1 2\n2 0\n2 3\n");
    auto graph = make_family(parse_edge_list(good, 1));
    CHECK(graph->order() == 4);
    CHECK(graph->min_degree() == 1);
    CHECK(graph->max_degree() == 3);

    std::istringstream disconnected("0 1\n2 3\n");
    CHECK_THROWS(make_family(parse_edge_list(disconnected, 1)));

    std::istringstream self_loop("0 0\n0 1\n");
    CHECK_THROWS(make_family(parse_edge_list(self_loop, 1)));

    std::istringstream parallel("0 1\n1 0\n");
    CHECK_THROWS(make_family(parse_edge_list(parallel, 1)));

    std::istringstream malformed("0\n");
    CHECK_THROWS(parse_edge_list(malformed, 1));
}

TEST_CASE("explicit families have no projection") {
    std::istringstream path("0 1\n1 2\n");
    auto graph = make_family(parse_edge_list(path, 1));
    CHECK(!graph->supports_projection());
    CHECK_THROWS_AS(graph->projection(0, 2), UnsupportedError);
}

TEST_CASE("construction guards") {
    CHECK_THROWS(HypercubeFamily(0));
    CHECK_THROWS(HypercubeFamily(64));
    CHECK_THROWS(MiddleLayerFamily(33));
    CHECK_THROWS(OddFamily(1));
    CHECK_THROWS(FoldedFamily(2));
    CHECK_THROWS(BaseGraph::cycle(2));
    FamilySpec bad_product;
    bad_product.kind = FamilySpec::Kind::Product;
    CHECK_THROWS(make_family(bad_product));
}

TEST_CASE("product distances dominate the differing-coordinate count") {
    FamilySpec spec{FamilySpec::Kind::Grid, 0, 0, {3, 3}, {}, {}, 1};
    auto grid = make_family(spec);
    const auto* product = dynamic_cast<const ProductFamily*>(grid.get());
    REQUIRE(product != nullptr);
    for (std::uint64_t i = 0; i < grid->order(); ++i) {
        for (std::uint64_t j = 0; j < grid->order(); ++j) {
            if (i == j) continue;
            int differing = 0;
            for (int c = 0; c < product->arity(); ++c) {
                if (product->coordinate(i, c) != product->coordinate(j, c)) ++differing;
            }
            CHECK(product->distance(i, j) >= differing);
        }
    }
}
