#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tamp/geometry.hpp"

namespace tamp {

struct PlanarPath {
    std::vector<Point> points;
    double cost = 0.0;
};

/// True when the closed segment ab stays out of every polygon's interior
/// and inside the world bounds. Exact up to floating-point predicates.
bool segment_clear_exact(const Point& a, const Point& b, const World& world);

/// Euclidean shortest path in a planar world with polygon obstacles, over
/// the visibility graph of start, goal and all free polygon vertices.
/// Ball obstacles are not supported. Returns nullopt when disconnected.
std::optional<PlanarPath> visibility_shortest_path(const World& world, const Point& start, const Point& goal);

/// Approximate shortest path on a cells x cells lattice over the world
/// bounds with 16-neighbour moves. Start and goal are snapped to their
/// nearest valid lattice nodes; the reported cost includes the snap legs.
std::optional<double> grid_shortest_path(const World& world, const Point& start, const Point& goal,
                                         std::size_t cells);

}  // namespace tamp
