#include "bootperc/traversal.hpp"

#include <algorithm>

namespace bootperc {

namespace {

// BFS layers up to `radius`, in discovery order. Throws BudgetExceededError
// when the visited set would grow past the budget.
std::vector<std::vector<VertexId>> bfs_layers(const GraphFamily& graph, VertexId center,
                                              int radius, const TraversalBudget& budget) {
    graph.require_vertex(center);
    if (radius < 0) throw RadiusRangeError("negative traversal radius");

    std::unordered_map<VertexId, int> seen;
    seen.reserve(64);
    seen.emplace(center, 0);

    std::vector<std::vector<VertexId>> layers;
    layers.push_back({center});

    std::vector<VertexId> scratch;
    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<VertexId> next;
        for (VertexId v : layers[static_cast<std::size_t>(depth - 1)]) {
            scratch.clear();
            graph.append_neighbours(v, scratch);
            for (VertexId w : scratch) {
                auto [it, inserted] = seen.emplace(w, depth);
                if (inserted) {
                    if (seen.size() > budget.max_visited) {
                        throw BudgetExceededError("traversal budget exceeded at radius " +
                                                  std::to_string(depth));
                    }
                    next.push_back(w);
                }
            }
        }
        if (next.empty()) break;
        layers.push_back(std::move(next));
    }
    return layers;
}

}  // namespace

BallView ball(const GraphFamily& graph, VertexId center, int radius,
              const TraversalBudget& budget) {
    BallView view;
    view.center = center;
    view.radius = radius;
    view.layers = bfs_layers(graph, center, radius, budget);
    for (auto& layer : view.layers) std::sort(layer.begin(), layer.end());
    // Pad with empty spheres when the graph runs out before `radius`.
    while (static_cast<int>(view.layers.size()) <= radius) view.layers.emplace_back();
    return view;
}

std::vector<VertexId> sphere(const GraphFamily& graph, VertexId center, int radius,
                             const TraversalBudget& budget) {
    auto layers = bfs_layers(graph, center, radius, budget);
    if (static_cast<int>(layers.size()) <= radius) return {};
    auto layer = std::move(layers[static_cast<std::size_t>(radius)]);
    std::sort(layer.begin(), layer.end());
    return layer;
}

int distance_within(const GraphFamily& graph, VertexId x, VertexId y, int cap,
                    const TraversalBudget& budget) {
    graph.require_vertex(x);
    graph.require_vertex(y);
    if (cap < 0) throw RadiusRangeError("negative distance cap");
    if (x == y) return 0;

    std::unordered_map<VertexId, int> seen;
    seen.emplace(x, 0);
    std::vector<VertexId> frontier{x};
    std::vector<VertexId> scratch;
    for (int depth = 1; depth <= cap; ++depth) {
        std::vector<VertexId> next;
        for (VertexId v : frontier) {
            scratch.clear();
            graph.append_neighbours(v, scratch);
            for (VertexId w : scratch) {
                if (w == y) return depth;
                if (seen.emplace(w, depth).second) {
                    if (seen.size() > budget.max_visited) {
                        throw BudgetExceededError("distance traversal budget exceeded");
                    }
                    next.push_back(w);
                }
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return kDistanceExceedsCap;
}

std::unordered_map<VertexId, int> bfs_depths(const GraphFamily& graph, VertexId center,
                                             int radius, const TraversalBudget& budget) {
    graph.require_vertex(center);
    std::unordered_map<VertexId, int> seen;
    seen.emplace(center, 0);
    std::vector<VertexId> frontier{center};
    std::vector<VertexId> scratch;
    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<VertexId> next;
        for (VertexId v : frontier) {
            scratch.clear();
            graph.append_neighbours(v, scratch);
            for (VertexId w : scratch) {
                if (seen.emplace(w, depth).second) {
                    if (seen.size() > budget.max_visited) {
                        throw BudgetExceededError("traversal budget exceeded");
                    }
                    next.push_back(w);
                }
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace bootperc
