#pragma once

#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tamp/polygon_paths.hpp"
#include "tamp/scenario.hpp"

namespace tamp {

using ScenarioParams = std::map<std::string, double>;

/// Gripper moving along a line (x) with an aperture g. Closing on the object
/// is only possible at the apex of a triangular notch in the (x, g) plane;
/// afterwards the object travels with the gripper along x.
///
/// Orbits: "transit" (2D, x and g) and "grasped" (1D, x).
struct GripperLineParams {
    double start_x = 0.2;
    double start_g = 0.9;
    double object_x = 0.6;
    double grasp_g = 0.4;
    double notch_half_width = 0.15;
    double goal_x = 0.9;
    bool trivial_goal = false;  ///< goal = start in the transit orbit
};

class GripperLine final : public Scenario {
public:
    explicit GripperLine(GripperLineParams params);

    std::string id() const override { return "gripper_line"; }
    OrbitKey start_orbit() const override { return "transit"; }
    Point start() const override { return Point{p_.start_x, p_.start_g}; }
    OrbitSpec orbit(const OrbitKey& key) const override;
    std::vector<TransitionState> sample_transitions(const OrbitSpec& from, Rng& rng,
                                                    std::size_t count) const override;
    bool is_goal(const OrbitKey& orbit, const Point& p) const override;
    std::vector<Point> goal_configurations(const OrbitKey& orbit) const override;
    OracleResult oracle() const override;

    const GripperLineParams& params() const { return p_; }
    Point apex() const { return Point{p_.object_x, p_.grasp_g}; }
    PolygonObstacle notch() const;
    World transit_world() const;

private:
    GripperLineParams p_;
};

/// Planar disc robot that picks a disc object at any rim angle theta and
/// carries it rigidly to a placement. Transfer orbits are keyed by theta
/// rounded to kKeyResolution radians.
struct PickPlaceParams {
    double start_x = 0.15;
    double start_y = 0.2;
    double object_x = 0.5;
    double object_y = 0.3;
    double goal_x = 0.5;
    double goal_y = 0.75;
    double robot_radius = 0.05;
    double object_radius = 0.05;
    bool obstacles = false;  ///< add the fixed polygon obstacle set; disables the oracle
};

class PickPlace2D final : public Scenario {
public:
    static constexpr double kKeyResolution = 1e-3;
    static constexpr long kKeyCount = 6284;  ///< ceil(2 pi / kKeyResolution)

    explicit PickPlace2D(PickPlaceParams params);

    std::string id() const override { return p_.obstacles ? "pick_place_2d_obstacles" : "pick_place_2d"; }
    OrbitKey start_orbit() const override { return "transit"; }
    Point start() const override { return Point{p_.start_x, p_.start_y}; }
    OrbitSpec orbit(const OrbitKey& key) const override;
    std::vector<TransitionState> sample_transitions(const OrbitSpec& from, Rng& rng,
                                                    std::size_t count) const override;
    bool is_goal(const OrbitKey& orbit, const Point& p) const override;
    std::vector<Point> goal_configurations(const OrbitKey& orbit) const override;
    OracleResult oracle() const override;

    const PickPlaceParams& params() const { return p_; }
    double grasp_offset() const { return p_.robot_radius + p_.object_radius; }
    Point grasp(double theta) const;
    Point place(double theta) const;
    static OrbitKey transfer_key(long k) { return "transfer:" + std::to_string(k); }
    /// Key index of a transfer orbit, or nullopt for other keys.
    static std::optional<long> transfer_index(const OrbitKey& key);
    static double key_angle(long k) { return static_cast<double>(k) * kKeyResolution; }

    /// Optimal cost of committing to grasp angle theta; +inf when infeasible.
    double cost_at(double theta) const;
    /// Minimizer of cost_at: grid over [0, 2 pi) refined by ternary search.
    std::pair<double, double> minimize_cost(std::size_t grid) const;

private:
    World transit_world() const;
    AxisBox robot_bounds() const;

    PickPlaceParams p_;
    std::vector<PolygonObstacle> polygons_;
};

/// Translating triangular robot (apex down, reference point at the apex)
/// above a floor with a V-shaped cavity and a ledge. The start rests on the
/// ledge corner, the goal has the apex seated in the cavity. Single orbit.
struct TriangleCavityParams {
    double cavity_half_angle = std::numbers::pi / 6;
    double robot_half_angle = std::numbers::pi / 12;
    double robot_height = 0.1;
    double cavity_depth = 0.1;
    double cavity_x = 0.7;
};

class TriangleCavity final : public Scenario {
public:
    static constexpr double kFloorHeight = 0.3;

    explicit TriangleCavity(TriangleCavityParams params);

    std::string id() const override { return "triangle_cavity"; }
    OrbitKey start_orbit() const override { return "free"; }
    Point start() const override;
    OrbitSpec orbit(const OrbitKey& key) const override;
    std::vector<TransitionState> sample_transitions(const OrbitSpec& from, Rng& rng,
                                                    std::size_t count) const override;
    bool is_goal(const OrbitKey& orbit, const Point& p) const override;
    std::vector<Point> goal_configurations(const OrbitKey& orbit) const override;
    OracleResult oracle() const override;
    PlannerDefaults planner_defaults() const override { return {1, 1}; }

    const TriangleCavityParams& params() const { return p_; }
    Point goal() const;
    const World& configuration_world() const { return world_; }
    /// Workspace obstacles before the Minkowski construction.
    const std::vector<PolygonObstacle>& workspace_obstacles() const { return workspace_; }

private:
    TriangleCavityParams p_;
    std::vector<PolygonObstacle> workspace_;
    World world_;
};

/// Convex hull (counter-clockwise, collinear points dropped) of planar points.
std::vector<Point> convex_hull(std::vector<Point> points);

/// Configuration-space obstacle of a convex workspace obstacle for a
/// translating convex robot: obstacle minus robot (Minkowski).
PolygonObstacle configuration_obstacle(const PolygonObstacle& obstacle, const std::vector<Point>& robot);

/// Known ids: gripper_line, pick_place_2d, pick_place_2d_obstacles,
/// triangle_cavity. Unknown ids, unknown parameter names and out-of-range
/// values raise UsageError.
std::unique_ptr<Scenario> build_scenario(const std::string& id, const ScenarioParams& params);

/// Parameter names accepted by build_scenario for an id.
std::vector<std::string> scenario_parameter_names(const std::string& id);

}  // namespace tamp
