// Bounded-radius traversal utilities: balls, spheres, capped distances.
// BFS runs on the family's neighbour generator with hash-set deduplication;
// nothing global is materialized.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bootperc/graph.hpp"

namespace bootperc {

struct TraversalBudget {
    // Visited-vertex cap per traversal. Exceeding it throws, never truncates.
    std::uint64_t max_visited = 1ULL << 26;
};

// Ball of radius `radius` around `center`: layers[i] is the sphere of radius
// i, sorted ascending by encoding. Layer 0 is {center}.
struct BallView {
    VertexId center = 0;
    int radius = 0;
    std::vector<std::vector<VertexId>> layers;

    std::uint64_t size() const {
        std::uint64_t s = 0;
        for (const auto& layer : layers) s += layer.size();
        return s;
    }
};

BallView ball(const GraphFamily& graph, VertexId center, int radius,
              const TraversalBudget& budget = {});

std::vector<VertexId> sphere(const GraphFamily& graph, VertexId center, int radius,
                             const TraversalBudget& budget = {});

inline constexpr int kDistanceExceedsCap = -1;

// Exact dist(x, y) when it is <= cap, kDistanceExceedsCap otherwise.
int distance_within(const GraphFamily& graph, VertexId x, VertexId y, int cap,
                    const TraversalBudget& budget = {});

// BFS depth map encoding -> distance, up to `radius`. Shared workhorse for
// the traversal ops and the certifier.
std::unordered_map<VertexId, int> bfs_depths(const GraphFamily& graph, VertexId center,
                                             int radius, const TraversalBudget& budget = {});

}  // namespace bootperc
