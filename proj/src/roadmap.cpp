#include "tamp/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace tamp {

double unit_ball_volume(int d) {
    if (d < 1) throw UsageError("unit_ball_volume: dimension must be >= 1");
    const double half = 0.5 * d;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double prm_star_radius(std::uint64_t n, int d, double mu) {
    if (n < 2) throw UsageError("prm_star_radius: n must be >= 2");
    if (d < 1) throw UsageError("prm_star_radius: dimension must be >= 1");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw UsageError("prm_star_radius: measure must be positive");
    const double inv_d = 1.0 / d;
    const double nn = static_cast<double>(n);
    return 2.0 * std::pow(1.0 + inv_d, inv_d) * std::pow(mu / unit_ball_volume(d), inv_d) *
           std::pow(std::log(nn) / nn, inv_d);
}

double fobt_radius(std::uint64_t n, int d, double mu) { return 2.0 * prm_star_radius(n, d, mu); }

double RadiusRule::radius(std::uint64_t n, int d, double mu) const {
    switch (mode) {
        case RadiusMode::prm_star: return prm_star_radius(n, d, mu);
        case RadiusMode::fobt: return fobt_radius(n, d, mu);
        case RadiusMode::scaled: return scale * prm_star_radius(n, d, mu);
    }
    return prm_star_radius(n, d, mu);
}

std::string RadiusRule::name() const {
    switch (mode) {
        case RadiusMode::prm_star: return "prm_star";
        case RadiusMode::fobt: return "fobt";
        case RadiusMode::scaled: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "scaled:%g", scale);
            return buf;
        }
    }
    return "prm_star";
}

RadiusRule RadiusRule::parse(const std::string& text) {
    if (text == "prm_star") return {RadiusMode::prm_star, 1.0};
    if (text == "fobt") return {RadiusMode::fobt, 1.0};
    if (text.rfind("scaled:", 0) == 0) {
        const std::string num = text.substr(7);
        std::size_t used = 0;
        double s = 0.0;
        try {
            s = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != num.size() || num.empty() || !(s > 0.0) || !std::isfinite(s)) {
            throw UsageError("radius scale must be a positive number: '" + text + "'");
        }
        return {RadiusMode::scaled, s};
    }
    throw UsageError("unknown radius mode '" + text + "' (expected prm_star, fobt or scaled:<f>)");
}

void RoadmapGraph::connect(std::size_t u, std::size_t v, double length) {
    adjacency_[u].push_back({static_cast<std::uint32_t>(v), length});
    adjacency_[v].push_back({static_cast<std::uint32_t>(u), length});
    ++edge_count_;
}

std::size_t RoadmapGraph::insert_vertex(const Point& p, VertexKind kind, double radius, const World& world,
                                        double resolution) {
    if (p.dim() != dim_) throw UsageError("insert_vertex: dimension mismatch");
    if (!(radius > 0.0)) throw UsageError("insert_vertex: radius must be positive");
    const std::size_t idx = points_.size();
    const auto near = nearest_within(p, radius);
    points_.push_back(p);
    kinds_.push_back(kind);
    adjacency_.emplace_back();
    log_.push_back({idx + 1, radius});
    for (std::size_t v : near) {
        if (segment_valid(points_[v], p, world, resolution)) connect(v, idx, distance(points_[v], p));
    }
    return idx;
}

void RoadmapGraph::rebuild(double radius, const World& world, double resolution) {
    for (auto& adj : adjacency_) adj.clear();
    edge_count_ = 0;
    const double r2 = radius * radius;
    for (std::size_t v = 0; v < points_.size(); ++v) {
        for (std::size_t u = 0; u < v; ++u) {
            if (squared_distance_unchecked(points_[u], points_[v]) > r2) continue;
            if (segment_valid(points_[u], points_[v], world, resolution)) {
                connect(u, v, distance(points_[u], points_[v]));
            }
        }
        log_[v] = {points_.size(), radius};
    }
}

std::vector<std::size_t> RoadmapGraph::nearest_within(const Point& p, double radius) const {
    if (radius < 0.0) throw UsageError("nearest_within: radius must be non-negative");
    if (p.dim() != dim_) throw UsageError("nearest_within: dimension mismatch");
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < points_.size(); ++v) {
        if (std::sqrt(squared_distance_unchecked(points_[v], p)) <= radius) out.push_back(v);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> RoadmapGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        for (const auto& e : adjacency_[u]) {
            if (u < e.to) out.emplace_back(u, e.to);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void RoadmapGraph::write_edge_list(std::ostream& os, const std::string& radius_mode) const {
    os << "# n " << size() << " d " << dim_ << " radius " << radius_mode << '\n';
    char buf[96];
    for (auto [u, v] : edges()) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", u, v, distance(points_[u], points_[v]));
        os << buf;
    }
}

std::optional<GraphPath> shortest_path(const RoadmapGraph& g, std::size_t source,
                                       std::span<const std::size_t> targets) {
    if (source >= g.size()) throw UsageError("shortest_path: source index out of range");
    if (targets.empty()) throw UsageError("shortest_path: target set is empty");
    std::vector<char> is_target(g.size(), 0);
    for (std::size_t t : targets) {
        if (t >= g.size()) throw UsageError("shortest_path: target index out of range");
        is_target[t] = 1;
    }
    return lexicographic_dijkstra(g.size(), source, is_target, [&](std::size_t u, auto&& visit) {
        for (const auto& e : g.neighbors(u)) visit(e.to, e.length);
    });
}

}  // namespace tamp
