#include "tamp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tamp {

std::optional<std::size_t> ForwardSearchTree::find(const OrbitKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ForwardSearchTree::add_node(OrbitSpec orbit, std::size_t parent, std::size_t discovered_at) {
    if (index_.count(orbit.key())) throw UsageError("tree already has orbit '" + orbit.key() + "'");
    if (parent != kNoParent && parent >= nodes_.size()) throw UsageError("tree parent out of range");
    const std::size_t depth = parent == kNoParent ? 0 : nodes_[parent].depth + 1;
    RoadmapGraph roadmap(orbit.world().dim());
    const OrbitKey key = orbit.key();
    nodes_.push_back(Node{std::move(orbit), std::move(roadmap), parent, depth, discovered_at, 0, 0, false, {}, {}});
    index_.emplace(key, nodes_.size() - 1);
    return nodes_.size() - 1;
}

std::size_t ForwardSearchTree::add_edge(TreeEdge edge) {
    if (edge.source_node >= nodes_.size() || edge.target_node >= nodes_.size()) {
        throw UsageError("tree edge endpoints out of range");
    }
    edges_.push_back(std::move(edge));
    return edges_.size() - 1;
}

class Planner {
public:
    Planner(const Scenario& scenario, const PlannerConfig& config)
        : scenario_(scenario), config_(config), rng_(config.seed) {}

    PlanResult run();

private:
    double resolution_for(const OrbitSpec& orbit) const {
        return config_.resolution > 0.0 ? config_.resolution : orbit.world().default_resolution();
    }
    double radius_for(const ForwardSearchTree::Node& node, std::size_t count) const {
        return config_.radius_rule.radius(std::max<std::size_t>(2, count), node.orbit.dimension(), node.orbit.mu());
    }
    std::size_t insert(std::size_t node_idx, const Point& p, VertexKind kind);
    std::size_t add_node(const OrbitKey& key, std::size_t parent, std::size_t iteration);
    void expand(std::size_t node_idx);
    void add_transitions(std::size_t node_idx, std::size_t iteration);
    void retrace();

    const Scenario& scenario_;
    const PlannerConfig& config_;
    Rng rng_;
    ForwardSearchTree tree_;
    std::vector<std::set<std::pair<OrbitKey, std::vector<double>>>> seen_transitions_;
    std::optional<TampPath> best_;
    bool dirty_ = false;
    bool has_goal_ = false;
    std::size_t retraces_ = 0;
};

std::size_t Planner::insert(std::size_t node_idx, const Point& p, VertexKind kind) {
    auto& node = tree_.nodes_[node_idx];
    const double r = radius_for(node, node.roadmap.size() + 1);
    const std::size_t v = node.roadmap.insert_vertex(p, kind, r, node.orbit.world(), resolution_for(node.orbit));
    if (scenario_.is_goal(node.orbit.key(), p)) {
        node.goal_vertices.push_back(v);
        has_goal_ = true;
        dirty_ = true;
    }
    return v;
}

std::size_t Planner::add_node(const OrbitKey& key, std::size_t parent, std::size_t iteration) {
    const std::size_t i = tree_.add_node(scenario_.orbit(key), parent, iteration);
    seen_transitions_.emplace_back();
    return i;
}

void Planner::expand(std::size_t node_idx) {
    {
        auto& node = tree_.nodes_[node_idx];
        ++node.selections;
        if (!node.expanded) {
            node.expanded = true;
            for (const Point& g : scenario_.goal_configurations(node.orbit.key())) {
                if (tree_.nodes_[node_idx].orbit.valid(g)) insert(node_idx, g, VertexKind::query);
            }
        }
    }
    // Target-side connection of transitions that lead into this orbit.
    std::vector<std::size_t> pending;
    pending.swap(tree_.nodes_[node_idx].pending);
    for (std::size_t e : pending) {
        const Point p = tree_.edges_[e].state.in_target;
        tree_.edges_[e].target_vertex = insert(node_idx, p, VertexKind::transition);
        dirty_ = true;
    }
    for (std::size_t i = 0; i < config_.samples_per_expansion; ++i) {
        const Point p = tree_.nodes_[node_idx].orbit.sample_interior(rng_);
        insert(node_idx, p, VertexKind::interior);
        ++tree_.nodes_[node_idx].interior_samples;
    }
}

void Planner::add_transitions(std::size_t node_idx, std::size_t iteration) {
    const auto samples =
        scenario_.sample_transitions(tree_.nodes_[node_idx].orbit, rng_, config_.transitions_per_expansion);
    for (const auto& t : samples) {
        std::vector<double> coords(t.in_source.coords().begin(), t.in_source.coords().end());
        if (!seen_transitions_[node_idx].emplace(t.target, std::move(coords)).second) continue;

        auto target = tree_.find(t.target);
        if (!target) {
            if (config_.max_tree_depth > 0 && tree_.nodes_[node_idx].depth + 1 > config_.max_tree_depth) continue;
            target = add_node(t.target, node_idx, iteration);
        }
        if (!validate_transition(t, tree_.nodes_[node_idx].orbit, tree_.nodes_[*target].orbit)) {
            throw GeometryError("scenario '" + scenario_.id() + "' produced an invalid transition " + t.source +
                                " -> " + t.target + " at " + t.in_source.to_string());
        }
        const std::size_t v = insert(node_idx, t.in_source, VertexKind::transition);
        const std::size_t e = tree_.add_edge({node_idx, *target, t, v, std::nullopt});
        tree_.nodes_[*target].pending.push_back(e);
    }
}

void Planner::retrace() {
    dirty_ = false;
    if (!has_goal_) return;
    ++retraces_;
    auto path = retrace_path(tree_);
    if (path && (!best_ || path->total_cost < best_->total_cost)) best_ = std::move(path);
}

PlanResult Planner::run() {
    if (config_.iterations < 1) throw UsageError("plan: iterations must be >= 1");
    if (config_.samples_per_expansion < 1) throw UsageError("plan: samples per expansion must be >= 1");
    if (config_.transitions_per_expansion < 1) throw UsageError("plan: transitions per expansion must be >= 1");

    const std::size_t root = add_node(scenario_.start_orbit(), ForwardSearchTree::kNoParent, 0);
    const Point start = scenario_.start();
    if (start.dim() != static_cast<std::size_t>(tree_.nodes_[root].orbit.dimension()) ||
        !tree_.nodes_[root].orbit.valid(start)) {
        throw UsageError("plan: start configuration " + start.to_string() + " is not valid in orbit '" +
                         scenario_.start_orbit() + "'");
    }
    insert(root, start, VertexKind::query);

    PlanDiagnostics diag;
    diag.best_cost_by_iteration.reserve(config_.iterations);
    diag.tree_size_by_iteration.reserve(config_.iterations);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    for (std::size_t it = 1; it <= config_.iterations; ++it) {
        diag.tree_size_by_iteration.push_back(tree_.nodes_.size());
        const auto sel = static_cast<std::size_t>(rng_.uniform_index(tree_.nodes_.size()));
        expand(sel);
        add_transitions(sel, it);
        const bool last = it == config_.iterations;
        const bool periodic = config_.retrace_period > 0 && it % config_.retrace_period == 0;
        if (config_.always_retrace || dirty_ || periodic || (last && !config_.strict_batch)) retrace();
        diag.best_cost_by_iteration.push_back(best_ ? best_->total_cost : kInf);
    }

    if (config_.strict_batch) {
        for (auto& node : tree_.nodes_) {
            if (node.roadmap.size() == 0) continue;
            node.roadmap.rebuild(radius_for(node, node.roadmap.size()), node.orbit.world(), resolution_for(node.orbit));
        }
        // Batch mode reports the rebuilt graph's solution, not the incremental best.
        best_.reset();
        retrace();
        diag.best_cost_by_iteration.back() = best_ ? best_->total_cost : kInf;
    }

    for (const auto& node : tree_.nodes_) {
        diag.orbits.push_back({node.orbit.key(), node.discovered_at, node.depth, node.selections,
                               node.interior_samples, node.roadmap.size(), node.roadmap.edge_count()});
        diag.total_vertices += node.roadmap.size();
        diag.total_edges += node.roadmap.edge_count();
    }
    diag.retrace_count = retraces_;
    diag.transition_count = tree_.edges_.size();
    return PlanResult{std::move(best_), std::move(diag), std::move(tree_)};
}

PlanResult plan(const Scenario& scenario, const PlannerConfig& config) {
    Planner planner(scenario, config);
    return planner.run();
}

std::optional<TampPath> retrace_path(const ForwardSearchTree& tree) {
    const auto& nodes = tree.nodes();
    if (nodes.empty() || nodes[0].roadmap.size() == 0) return std::nullopt;

    std::vector<std::size_t> offset(nodes.size() + 1, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) offset[i + 1] = offset[i] + nodes[i].roadmap.size();
    const std::size_t total = offset.back();

    std::vector<char> is_target(total, 0);
    bool any_target = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t v : nodes[i].goal_vertices) {
            is_target[offset[i] + v] = 1;
            any_target = true;
        }
    }
    if (!any_target) return std::nullopt;

    // Zero-cost identification links, keyed by global vertex; value is the
    // tree edge index so the transition can be recovered.
    std::unordered_multimap<std::size_t, std::pair<std::size_t, std::size_t>> links;
    const auto& edges = tree.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!edges[e].target_vertex) continue;
        const std::size_t a = offset[edges[e].source_node] + edges[e].source_vertex;
        const std::size_t b = offset[edges[e].target_node] + *edges[e].target_vertex;
        links.emplace(a, std::make_pair(b, e));
        links.emplace(b, std::make_pair(a, e));
    }

    auto locate = [&](std::size_t g) {
        const auto it = std::upper_bound(offset.begin(), offset.end(), g);
        const auto node = static_cast<std::size_t>(it - offset.begin()) - 1;
        return std::make_pair(node, g - offset[node]);
    };

    const auto result = lexicographic_dijkstra(
        total, offset[0] + tree.start_vertex(), is_target, [&](std::size_t u, auto&& visit) {
            const auto [node, local] = locate(u);
            for (const auto& e : nodes[node].roadmap.neighbors(local)) visit(offset[node] + e.to, e.length);
            auto [lo, hi] = links.equal_range(u);
            for (auto it = lo; it != hi; ++it) visit(it->second.first, 0.0);
        });
    if (!result) return std::nullopt;

    TampPath path;
    std::size_t prev_node = static_cast<std::size_t>(-1);
    std::size_t prev_global = 0;
    for (std::size_t g : result->vertices) {
        const auto [node, local] = locate(g);
        const Point& p = nodes[node].roadmap.point(local);
        if (node != prev_node) {
            if (!path.segments.empty()) {
                // Crossing between orbits happens only over an identification link.
                auto [lo, hi] = links.equal_range(prev_global);
                const ForwardSearchTree::TreeEdge* edge = nullptr;
                for (auto it = lo; it != hi; ++it) {
                    if (it->second.first == g) edge = &edges[it->second.second];
                }
                if (edge == nullptr) throw std::logic_error("retrace_path: orbit change without a transition");
                if (edge->source_node == prev_node) {
                    path.transitions.push_back(edge->state);
                } else {
                    const auto& s = edge->state;
                    path.transitions.push_back({s.target, s.source, s.in_target, s.in_source});
                }
            }
            path.segments.push_back({nodes[node].orbit.key(), {}});
            prev_node = node;
        }
        path.segments.back().points.push_back(p);
        prev_global = g;
    }
    path.total_cost = result->cost;
    return path;
}

std::vector<Violation> validate_tamp_path(const TampPath& path, const Scenario& scenario, double resolution) {
    std::vector<Violation> out;
    constexpr double kTol = 1e-9;
    if (path.segments.empty() || path.segments.front().points.empty()) {
        out.push_back({"empty_path", "path has no points"});
        return out;
    }
    if (path.transitions.size() + 1 != path.segments.size()) {
        out.push_back({"structure", std::to_string(path.segments.size()) + " segments but " +
                                        std::to_string(path.transitions.size()) + " transitions"});
        return out;
    }

    std::vector<std::optional<OrbitSpec>> specs;
    for (const auto& seg : path.segments) {
        try {
            specs.emplace_back(scenario.orbit(seg.orbit));
        } catch (const UsageError& e) {
            out.push_back({"unknown_orbit", e.what()});
            specs.emplace_back(std::nullopt);
        }
    }

    const Point& first = path.segments.front().points.front();
    if (path.segments.front().orbit != scenario.start_orbit() || first.dim() != scenario.start().dim() ||
        distance(first, scenario.start()) > kTol) {
        out.push_back({"start_mismatch", "path starts at " + first.to_string()});
    }

    for (std::size_t k = 0; k < path.segments.size(); ++k) {
        const auto& seg = path.segments[k];
        if (!specs[k]) continue;
        const auto& spec = *specs[k];
        const double res = resolution > 0.0 ? resolution : spec.world().default_resolution();
        if (seg.points.empty()) {
            out.push_back({"empty_segment", "segment " + std::to_string(k) + " has no points"});
            continue;
        }
        for (std::size_t i = 0; i < seg.points.size(); ++i) {
            const Point& p = seg.points[i];
            if (p.dim() != static_cast<std::size_t>(spec.dimension()) || !spec.valid(p)) {
                out.push_back({"invalid_point", "segment " + std::to_string(k) + " point " + p.to_string()});
                continue;
            }
            if (i > 0 && seg.points[i - 1].dim() == p.dim() && !segment_valid(seg.points[i - 1], p, spec.world(), res)) {
                out.push_back({"collision", "segment " + std::to_string(k) + " between " +
                                                seg.points[i - 1].to_string() + " and " + p.to_string()});
            }
        }
    }

    for (std::size_t k = 0; k < path.transitions.size(); ++k) {
        const auto& t = path.transitions[k];
        const auto& before = path.segments[k];
        const auto& after = path.segments[k + 1];
        if (t.source != before.orbit || t.target != after.orbit) {
            out.push_back({"orbit_mismatch", "transition " + std::to_string(k) + " joins " + t.source + " -> " +
                                                 t.target + " but segments are " + before.orbit + " -> " + after.orbit});
            continue;
        }
        if (before.points.empty() || after.points.empty()) continue;
        const bool src_ok = before.points.back().dim() == t.in_source.dim() &&
                            distance(before.points.back(), t.in_source) <= kTol;
        const bool tgt_ok = after.points.front().dim() == t.in_target.dim() &&
                            distance(after.points.front(), t.in_target) <= kTol;
        if (!src_ok || !tgt_ok) {
            out.push_back({"chart_mismatch", "transition " + std::to_string(k) + " coordinates do not match the "
                                                 "adjacent segment endpoints"});
        }
        if (specs[k] && specs[k + 1] && !validate_transition(t, *specs[k], *specs[k + 1])) {
            out.push_back({"invalid_transition", "transition " + std::to_string(k) + " is not on both orbit boundaries"});
        }
    }

    const double sum = summed_length(path);
    if (std::abs(sum - path.total_cost) > kTol * std::max(1.0, sum)) {
        out.push_back({"cost_mismatch", "recorded " + std::to_string(path.total_cost) + " vs summed " + std::to_string(sum)});
    }

    const auto& last_seg = path.segments.back();
    if (!last_seg.points.empty() && !scenario.is_goal(last_seg.orbit, last_seg.points.back())) {
        out.push_back({"goal_not_reached", "final point " + last_seg.points.back().to_string()});
    }
    return out;
}

std::map<OrbitKey, std::size_t> orbit_selection_counts(const PlanDiagnostics& diagnostics) {
    std::map<OrbitKey, std::size_t> out;
    for (const auto& o : diagnostics.orbits) out[o.key] = o.selections;
    return out;
}

}  // namespace tamp
