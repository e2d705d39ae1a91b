#include "tamp/polygon_paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tamp/errors.hpp"
#include "tamp/roadmap.hpp"

namespace tamp {

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

void require_planar(const World& world, const Point& a, const Point& b) {
    if (world.dim() != 2 || a.dim() != 2 || b.dim() != 2) throw UsageError("planar path queries need 2D points");
}

bool crosses_interior(const Point& a, const Point& b, const PolygonObstacle& poly) {
    const double rx = b[0] - a[0];
    const double ry = b[1] - a[1];
    const double rr = rx * rx + ry * ry;
    std::vector<double> ts{0.0, 1.0};
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        const double sx = q[0] - p[0];
        const double sy = q[1] - p[1];
        const double px = p[0] - a[0];
        const double py = p[1] - a[1];
        const double denom = cross(rx, ry, sx, sy);
        if (std::abs(denom) > 1e-15) {
            const double t = cross(px, py, sx, sy) / denom;
            const double u = cross(px, py, rx, ry) / denom;
            if (t > 0.0 && t < 1.0 && u >= -1e-12 && u <= 1.0 + 1e-12) ts.push_back(t);
        }
        if (rr > 0.0 && point_segment_distance(p, a, b) <= kBoundaryTolerance) {
            ts.push_back(std::clamp((px * rx + py * ry) / rr, 0.0, 1.0));
        }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] - ts[i - 1] <= 1e-15) continue;
        const double t = 0.5 * (ts[i] + ts[i - 1]);
        const Point m{a[0] + t * rx, a[1] + t * ry};
        if (point_in_polygon(m, poly) == PolygonSide::inside) return true;
    }
    return rr == 0.0 && point_in_polygon(a, poly) == PolygonSide::inside;
}

}  // namespace

bool segment_clear_exact(const Point& a, const Point& b, const World& world) {
    require_planar(world, a, b);
    if (!world.bounds().contains(a) || !world.bounds().contains(b)) return false;
    for (const auto& ball : world.balls()) {
        if (point_segment_distance(ball.center, a, b) < ball.radius - kBoundaryTolerance) return false;
    }
    for (const auto& poly : world.polygons()) {
        if (crosses_interior(a, b, poly)) return false;
    }
    return true;
}

std::optional<PlanarPath> visibility_shortest_path(const World& world, const Point& start, const Point& goal) {
    require_planar(world, start, goal);
    if (!world.balls().empty()) throw UsageError("visibility_shortest_path: ball obstacles are not supported");
    if (!world.point_valid(start) || !world.point_valid(goal)) return std::nullopt;

    std::vector<Point> nodes{start, goal};
    for (const auto& poly : world.polygons()) {
        for (const auto& v : poly.vertices()) {
            if (world.point_valid(v)) nodes.push_back(v);
        }
    }
    const std::size_t n = nodes.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!segment_clear_exact(nodes[i], nodes[j], world)) continue;
            const double len = distance(nodes[i], nodes[j]);
            adj[i].emplace_back(j, len);
            adj[j].emplace_back(i, len);
        }
    }
    std::vector<char> target(n, 0);
    target[1] = 1;
    const auto found = lexicographic_dijkstra(n, 0, target, [&](std::size_t u, auto&& visit) {
        for (const auto& [v, w] : adj[u]) visit(v, w);
    });
    if (!found) return std::nullopt;
    PlanarPath out;
    for (std::size_t v : found->vertices) out.points.push_back(nodes[v]);
    out.cost = found->cost;
    return out;
}

std::optional<double> grid_shortest_path(const World& world, const Point& start, const Point& goal,
                                         std::size_t cells) {
    require_planar(world, start, goal);
    if (cells < 2) throw UsageError("grid_shortest_path: need at least 2 cells");
    const std::size_t side = cells + 1;
    const Point& lo = world.bounds().lo();
    const Point& hi = world.bounds().hi();
    const double hx = (hi[0] - lo[0]) / static_cast<double>(cells);
    const double hy = (hi[1] - lo[1]) / static_cast<double>(cells);
    const double res = 0.25 * std::min(hx, hy);
    auto at = [&](std::size_t i, std::size_t j) {
        return Point{i == cells ? hi[0] : lo[0] + hx * static_cast<double>(i),
                     j == cells ? hi[1] : lo[1] + hy * static_cast<double>(j)};
    };

    std::vector<signed char> valid(side * side, -1);
    auto is_valid = [&](std::size_t i, std::size_t j) {
        auto& v = valid[j * side + i];
        if (v < 0) v = world.point_valid(at(i, j)) ? 1 : 0;
        return v == 1;
    };

    // Nearest valid lattice node with a clear straight leg to p.
    auto snap = [&](const Point& p) -> std::optional<std::pair<std::size_t, double>> {
        const auto ci = static_cast<long>(std::lround((p[0] - lo[0]) / hx));
        const auto cj = static_cast<long>(std::lround((p[1] - lo[1]) / hy));
        std::optional<std::pair<std::size_t, double>> best;
        for (long r = 0; r <= 8 && !best; ++r) {
            for (long i = ci - r - 1; i <= ci + r + 1; ++i) {
                for (long j = cj - r - 1; j <= cj + r + 1; ++j) {
                    if (i < 0 || j < 0 || i >= static_cast<long>(side) || j >= static_cast<long>(side)) continue;
                    const auto ui = static_cast<std::size_t>(i);
                    const auto uj = static_cast<std::size_t>(j);
                    if (!is_valid(ui, uj)) continue;
                    const Point q = at(ui, uj);
                    if (!segment_valid(p, q, world, res)) continue;
                    const double d = distance(p, q);
                    if (!best || d < best->second) best = std::make_pair(uj * side + ui, d);
                }
            }
        }
        return best;
    };

    const auto s = snap(start);
    const auto g = snap(goal);
    if (!s || !g) return std::nullopt;

    static constexpr int kMoves[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},   {1, -1}, {-1, 1}, {-1, -1},
                                          {1, 2},  {2, 1},  {-1, 2}, {-2, 1}, {1, -2},  {2, -1}, {-1, -2}, {-2, -1}};
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(side * side, kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s->first] = 0.0;
    heap.emplace(0.0, s->first);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[u]) continue;
        if (u == g->first) return s->second + d + g->second;
        const std::size_t ui = u % side;
        const std::size_t uj = u / side;
        const Point pu = at(ui, uj);
        for (const auto& m : kMoves) {
            const long vi = static_cast<long>(ui) + m[0];
            const long vj = static_cast<long>(uj) + m[1];
            if (vi < 0 || vj < 0 || vi >= static_cast<long>(side) || vj >= static_cast<long>(side)) continue;
            const auto wi = static_cast<std::size_t>(vi);
            const auto wj = static_cast<std::size_t>(vj);
            if (!is_valid(wi, wj)) continue;
            const Point pv = at(wi, wj);
            const double nd = d + distance(pu, pv);
            const std::size_t v = wj * side + wi;
            if (nd >= dist[v]) continue;
            if (!segment_valid(pu, pv, world, res)) continue;
            dist[v] = nd;
            heap.emplace(nd, v);
        }
    }
    return std::nullopt;
}

}  // namespace tamp
