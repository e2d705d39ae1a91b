#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tamp/planner.hpp"
#include "tamp/rng.hpp"

namespace tamp::test_support {

/// Two-sided one-sample Kolmogorov-Smirnov test against a continuous CDF.
/// Returns the asymptotic p-value.
inline double ks_p_value(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double q = 0.0;
    for (int k = 1; k <= 100; ++k) {
        q += (k % 2 == 1 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
    }
    return std::clamp(q, 0.0, 1.0);
}

struct BrutePath {
    std::vector<std::size_t> vertices;  // global indices
    double cost = std::numeric_limits<double>::infinity();
    std::size_t optimal_count = 0;      // simple paths within 1e-12 of the optimum
};

/// Enumerates every simple start-to-goal path of the composite graph
/// (roadmap edges plus zero-cost tree links).
inline BrutePath brute_force_composite(const ForwardSearchTree& tree) {
    const auto& nodes = tree.nodes();
    std::vector<std::size_t> offset{0};
    for (const auto& n : nodes) offset.push_back(offset.back() + n.roadmap.size());
    const std::size_t total = offset.back();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(total);
    std::vector<char> goal(total, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t v = 0; v < nodes[i].roadmap.size(); ++v) {
            for (const auto& e : nodes[i].roadmap.neighbors(v)) adj[offset[i] + v].emplace_back(offset[i] + e.to, e.length);
        }
        for (std::size_t g : nodes[i].goal_vertices) goal[offset[i] + g] = 1;
    }
    for (const auto& e : tree.edges()) {
        if (!e.target_vertex) continue;
        const std::size_t a = offset[e.source_node] + e.source_vertex;
        const std::size_t b = offset[e.target_node] + *e.target_vertex;
        adj[a].emplace_back(b, 0.0);
        adj[b].emplace_back(a, 0.0);
    }

    BrutePath best;
    std::vector<BrutePath> all;
    if (total == 0) return best;
    std::vector<std::size_t> stack{0};
    std::vector<char> on(total, 0);
    on[0] = 1;
    std::function<void(double)> dfs = [&](double cost) {
        const std::size_t u = stack.back();
        if (goal[u]) all.push_back({stack, cost, 0});
        for (const auto& [v, w] : adj[u]) {
            if (on[v]) continue;
            on[v] = 1;
            stack.push_back(v);
            dfs(cost + w);
            stack.pop_back();
            on[v] = 0;
        }
    };
    dfs(0.0);
    for (const auto& p : all) {
        if (p.cost < best.cost || (p.cost == best.cost && p.vertices < best.vertices)) best = p;
    }
    for (const auto& p : all) {
        if (p.cost <= best.cost + 1e-12) ++best.optimal_count;
    }
    return best;
}

/// Random composite graph: 1-3 orbits, at most max_vertices roadmap vertices
/// in total, random radii, random tree links and goal vertices.
inline ForwardSearchTree random_composite_tree(Rng& rng, std::size_t max_vertices) {
    ForwardSearchTree tree;
    const std::size_t orbits = 1 + rng.uniform_index(3);
    std::size_t budget = std::max<std::size_t>(orbits, 2 + rng.uniform_index(max_vertices - 1));
    World world(AxisBox(Point{0.0, 0.0}, Point{1.0, 1.0}));
    for (std::size_t i = 0; i < orbits; ++i) {
        const std::size_t parent = i == 0 ? ForwardSearchTree::kNoParent : rng.uniform_index(i);
        tree.add_node(OrbitSpec("o" + std::to_string(i), "m", world), parent, i);
    }
    std::vector<std::size_t> counts(orbits, 1);
    for (std::size_t extra = budget - orbits; extra > 0; --extra) ++counts[rng.uniform_index(orbits)];
    for (std::size_t i = 0; i < orbits; ++i) {
        auto& node = tree.mutable_node(i);
        for (std::size_t k = 0; k < counts[i]; ++k) {
            const Point p{rng.uniform01(), rng.uniform01()};
            node.roadmap.insert_vertex(p, VertexKind::interior, rng.uniform(0.2, 0.9), world, 1e-2);
        }
    }
    for (std::size_t i = 1; i < orbits; ++i) {
        const std::size_t links = 1 + rng.uniform_index(2);
        for (std::size_t k = 0; k < links; ++k) {
            const std::size_t parent = tree.node(i).parent;
            const std::size_t sv = rng.uniform_index(tree.node(parent).roadmap.size());
            std::optional<std::size_t> tv;
            if (rng.uniform01() < 0.85) tv = rng.uniform_index(tree.node(i).roadmap.size());
            TransitionState st{tree.node(parent).orbit.key(), tree.node(i).orbit.key(),
                               tree.node(parent).roadmap.point(sv),
                               tv ? tree.node(i).roadmap.point(*tv) : Point{0.0, 0.0}};
            tree.add_edge({parent, i, st, sv, tv});
        }
    }
    const std::size_t goals = 1 + rng.uniform_index(2);
    for (std::size_t k = 0; k < goals; ++k) {
        const std::size_t i = rng.uniform_index(orbits);
        tree.mutable_node(i).goal_vertices.push_back(rng.uniform_index(tree.node(i).roadmap.size()));
    }
    return tree;
}

/// Global vertex sequence of a retraced path, recovered from its points.
inline std::vector<std::size_t> global_vertices(const ForwardSearchTree& tree, const TampPath& path) {
    std::vector<std::size_t> out;
    std::size_t base = 0;
    std::vector<std::size_t> offset;
    for (const auto& n : tree.nodes()) {
        offset.push_back(base);
        base += n.roadmap.size();
    }
    for (const auto& seg : path.segments) {
        const std::size_t i = *tree.find(seg.orbit);
        for (const auto& p : seg.points) {
            const auto& g = tree.node(i).roadmap;
            for (std::size_t v = 0; v < g.size(); ++v) {
                if (g.point(v) == p) {
                    out.push_back(offset[i] + v);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace tamp::test_support
