#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tamp/orbits.hpp"
#include "tamp/roadmap.hpp"
#include "tamp/scenario.hpp"
#include "tamp/tamp_path.hpp"

namespace tamp {

struct PlannerConfig {
    std::size_t samples_per_expansion = 10;     ///< interior samples per expansion
    std::size_t transitions_per_expansion = 1;  ///< transition samples per expansion
    RadiusRule radius_rule{};
    std::size_t iterations = 1000;
    double resolution = 0.0;  ///< collision resolution; <= 0 selects each orbit's default
    std::uint64_t seed = 0;
    bool strict_batch = false;     ///< rebuild every roadmap at its final radius before the last retrace
    bool always_retrace = false;   ///< retrace every iteration (reference mode for the lazy schedule)
    std::size_t max_tree_depth = 0;  ///< runaway guard on tree depth; 0 = unlimited
    std::size_t retrace_period = 50;
};

/// Orbit-level tree grown by the planner. Node 0 is the root orbit holding the
/// start; every other node was discovered through a sampled transition.
class ForwardSearchTree {
public:
    struct Node {
        OrbitSpec orbit;
        RoadmapGraph roadmap;
        std::size_t parent;
        std::size_t depth;
        std::size_t discovered_at;
        std::size_t selections = 0;
        std::size_t interior_samples = 0;
        bool expanded = false;
        std::vector<std::size_t> pending;  ///< tree edges awaiting target-side insertion
        std::vector<std::size_t> goal_vertices;
    };

    struct TreeEdge {
        std::size_t source_node;
        std::size_t target_node;
        TransitionState state;
        std::size_t source_vertex;
        std::optional<std::size_t> target_vertex;
    };

    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<TreeEdge>& edges() const { return edges_; }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    std::optional<std::size_t> find(const OrbitKey& key) const;
    std::size_t start_vertex() const { return 0; }

    /// Construction used by the planner; also usable to assemble trees by hand.
    std::size_t add_node(OrbitSpec orbit, std::size_t parent, std::size_t discovered_at);
    Node& mutable_node(std::size_t i) { return nodes_[i]; }
    std::size_t add_edge(TreeEdge edge);

private:
    friend class Planner;
    std::vector<Node> nodes_;
    std::vector<TreeEdge> edges_;
    std::unordered_map<OrbitKey, std::size_t> index_;
};

struct OrbitDiagnostics {
    OrbitKey key;
    std::size_t discovered_at;
    std::size_t depth;
    std::size_t selections;
    std::size_t interior_samples;
    std::size_t vertices;
    std::size_t edges;
};

struct PlanDiagnostics {
    std::vector<OrbitDiagnostics> orbits;
    std::vector<double> best_cost_by_iteration;  ///< +inf before the first solution
    std::vector<std::size_t> tree_size_by_iteration;  ///< node count when each iteration selected
    std::size_t retrace_count = 0;
    std::size_t transition_count = 0;
    std::size_t total_vertices = 0;
    std::size_t total_edges = 0;
};

struct PlanResult {
    std::optional<TampPath> path;
    PlanDiagnostics diagnostics;
    ForwardSearchTree tree;
};

/// Runs the forward-search-tree planner for config.iterations iterations.
/// Each iteration picks a tree orbit uniformly at random, grows its roadmap,
/// samples transitions out of it and (on a lazy schedule) retraces the best
/// path over the composite graph.
PlanResult plan(const Scenario& scenario, const PlannerConfig& config);

/// Shortest start-to-goal path over the composite graph: all orbit roadmaps,
/// with each tree edge joining its two transition vertices at zero cost.
std::optional<TampPath> retrace_path(const ForwardSearchTree& tree);

struct Violation {
    std::string kind;
    std::string detail;
};

/// Checks every TampPath invariant and that the path reaches the goal.
/// Returns an empty list for a valid path. resolution <= 0 uses each orbit's
/// default collision resolution.
std::vector<Violation> validate_tamp_path(const TampPath& path, const Scenario& scenario, double resolution);

std::map<OrbitKey, std::size_t> orbit_selection_counts(const PlanDiagnostics& diagnostics);

}  // namespace tamp
