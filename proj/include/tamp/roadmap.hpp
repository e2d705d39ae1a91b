#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tamp/geometry.hpp"

namespace tamp {

/// Lebesgue measure of the unit ball in R^d.
double unit_ball_volume(int d);

/// Connection radius sufficient for asymptotically optimal roadmaps:
/// 2 (1 + 1/d)^(1/d) (mu / mu_1)^(1/d) (ln n / n)^(1/d).
double prm_star_radius(std::uint64_t n, int d, double mu);

/// The doubled radius used by the earlier multi-modal analysis; exactly
/// 2 * prm_star_radius.
double fobt_radius(std::uint64_t n, int d, double mu);

enum class RadiusMode { prm_star, fobt, scaled };

struct RadiusRule {
    RadiusMode mode = RadiusMode::prm_star;
    double scale = 1.0;  ///< multiplier on prm_star when mode == scaled

    double radius(std::uint64_t n, int d, double mu) const;

    /// "prm_star", "fobt" or "scaled:<f>".
    std::string name() const;
    static RadiusRule parse(const std::string& text);
};

enum class VertexKind { interior, transition, query };

struct Edge {
    std::uint32_t to;
    double length;
};

/// Bookkeeping for one vertex insertion: roadmap size after the insertion and
/// the radius used for its connections.
struct InsertionRecord {
    std::size_t vertex_count;
    double radius;
};

/// Random geometric graph over one chart. Edges join vertices within the
/// connection radius whose straight segment is valid.
class RoadmapGraph {
public:
    explicit RoadmapGraph(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const Point& point(std::size_t v) const { return points_[v]; }
    VertexKind kind(std::size_t v) const { return kinds_[v]; }
    std::span<const Edge> neighbors(std::size_t v) const { return adjacency_[v]; }
    const InsertionRecord& insertion(std::size_t v) const { return log_[v]; }

    /// Appends p and connects it to every vertex within radius whose segment
    /// to p is valid. Returns the new vertex index.
    std::size_t insert_vertex(const Point& p, VertexKind kind, double radius, const World& world,
                              double resolution);

    /// Drops all edges and reconnects every pair within radius (batch mode).
    void rebuild(double radius, const World& world, double resolution);

    /// Indices of vertices in the closed ball of the given radius around p.
    std::vector<std::size_t> nearest_within(const Point& p, double radius) const;

    /// Unordered edges as (u, v) with u < v, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    /// Edge-list text: a header line, then one "u v length" line per edge.
    void write_edge_list(std::ostream& os, const std::string& radius_mode) const;

private:
    void connect(std::size_t u, std::size_t v, double length);

    std::size_t dim_;
    std::vector<Point> points_;
    std::vector<VertexKind> kinds_;
    std::vector<std::vector<Edge>> adjacency_;
    std::vector<InsertionRecord> log_;
    std::size_t edge_count_ = 0;
};

struct GraphPath {
    std::vector<std::size_t> vertices;
    double cost = 0.0;
};

/// Dijkstra over an implicit graph with deterministic tie-breaking: among
/// equal-cost paths the lexicographically smallest vertex sequence wins
/// (guaranteed for strictly positive weights).
///
/// for_each_neighbor(u, visit) must call visit(v, w) for each edge u->v.
template <class NeighborFn>
std::optional<GraphPath> lexicographic_dijkstra(std::size_t vertex_count, std::size_t source,
                                                std::span<const char> is_target, NeighborFn&& for_each_neighbor) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<double> dist(vertex_count, kInf);
    std::vector<std::size_t> pred(vertex_count, kNone);
    std::vector<char> settled(vertex_count, 0);

    auto chain = [&](std::size_t v) {
        std::vector<std::size_t> out;
        for (; v != kNone; v = pred[v]) out.push_back(v);
        return std::vector<std::size_t>(out.rbegin(), out.rend());
    };

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);

    double best = kInf;
    std::vector<std::size_t> hits;
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u] || d != dist[u]) continue;
        if (d > best) break;
        settled[u] = 1;
        if (is_target[u]) {
            best = d;
            hits.push_back(u);
            continue;
        }
        for_each_neighbor(u, [&](std::size_t v, double w) {
            if (settled[v]) return;
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = u;
                heap.emplace(nd, v);
            } else if (nd == dist[v] && pred[v] != u && pred[v] != kNone) {
                if (chain(u) < chain(pred[v])) pred[v] = u;
            }
        });
    }
    if (hits.empty()) return std::nullopt;

    GraphPath result;
    result.cost = best;
    result.vertices = chain(hits.front());
    for (std::size_t i = 1; i < hits.size(); ++i) {
        auto c = chain(hits[i]);
        if (c < result.vertices) result.vertices = std::move(c);
    }
    return result;
}

/// Shortest path by summed edge length from source to any target.
std::optional<GraphPath> shortest_path(const RoadmapGraph& g, std::size_t source, std::span<const std::size_t> targets);

}  // namespace tamp
