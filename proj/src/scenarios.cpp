#include "tamp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tamp/errors.hpp"

namespace tamp {

namespace {

constexpr double kGoalTolerance = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

Point unit(double theta) { return Point{std::cos(theta), std::sin(theta)}; }

PolygonObstacle box_polygon(double x0, double y0, double x1, double y1) {
    return PolygonObstacle({Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}});
}

}  // namespace

// ---------------------------------------------------------------- GripperLine

GripperLine::GripperLine(GripperLineParams params) : p_(params) {
    require(in_unit(p_.start_x) && in_unit(p_.start_g), "gripper_line: start must lie in [0,1]^2");
    require(p_.notch_half_width > 0.0, "gripper_line: notch_half_width must be positive");
    require(p_.object_x - p_.notch_half_width >= 0.0 && p_.object_x + p_.notch_half_width <= 1.0,
            "gripper_line: notch must fit inside [0,1]");
    require(p_.grasp_g > 0.0 && p_.grasp_g < 1.0, "gripper_line: grasp_g must lie in (0,1)");
    require(in_unit(p_.goal_x), "gripper_line: goal_x must lie in [0,1]");
    require(transit_world().point_valid(start()), "gripper_line: start lies inside the notch");
}

PolygonObstacle GripperLine::notch() const {
    return PolygonObstacle({Point{p_.object_x - p_.notch_half_width, 0.0},
                            Point{p_.object_x + p_.notch_half_width, 0.0}, apex()});
}

World GripperLine::transit_world() const {
    World w(AxisBox(Point{0.0, 0.0}, Point{1.0, 1.0}));
    w.add(notch());
    return w;
}

OrbitSpec GripperLine::orbit(const OrbitKey& key) const {
    if (key == "transit") return OrbitSpec("transit", "transit", transit_world());
    if (key == "grasped") {
        return OrbitSpec("grasped", "grasped", World(AxisBox(Point{0.0}, Point{1.0})), {Point{p_.object_x}});
    }
    throw UsageError("gripper_line: unknown orbit '" + key + "'");
}

std::vector<TransitionState> GripperLine::sample_transitions(const OrbitSpec& from, Rng& /*rng*/,
                                                             std::size_t count) const {
    if (from.key() != "transit" || count == 0) return {};
    return {TransitionState{"transit", "grasped", apex(), Point{p_.object_x}}};
}

bool GripperLine::is_goal(const OrbitKey& orbit, const Point& p) const {
    if (p_.trivial_goal) return orbit == "transit" && p.dim() == 2 && distance(p, start()) <= kGoalTolerance;
    return orbit == "grasped" && p.dim() == 1 && std::abs(p[0] - p_.goal_x) <= kGoalTolerance;
}

std::vector<Point> GripperLine::goal_configurations(const OrbitKey& orbit) const {
    if (!p_.trivial_goal && orbit == "grasped") return {Point{p_.goal_x}};
    return {};
}

OracleResult GripperLine::oracle() const {
    OracleResult out{0.0, {}};
    if (p_.trivial_goal) {
        out.witness.segments.push_back({"transit", {start()}});
        return out;
    }
    const auto leg = visibility_shortest_path(transit_world(), start(), apex());
    if (!leg) throw GeometryError("gripper_line: apex unreachable from the start");
    out.witness.segments.push_back({"transit", leg->points});
    out.witness.transitions.push_back({"transit", "grasped", apex(), Point{p_.object_x}});
    PathSegment carried{"grasped", {Point{p_.object_x}}};
    if (p_.goal_x != p_.object_x) carried.points.push_back(Point{p_.goal_x});
    out.witness.segments.push_back(std::move(carried));
    out.cost = leg->cost + std::abs(p_.object_x - p_.goal_x);
    out.witness.total_cost = summed_length(out.witness);
    return out;
}

// ---------------------------------------------------------------- PickPlace2D

PickPlace2D::PickPlace2D(PickPlaceParams params) : p_(params) {
    require(p_.robot_radius >= 0.0 && p_.robot_radius <= 0.2, "pick_place_2d: robot_radius must lie in [0,0.2]");
    require(p_.object_radius >= 0.0 && p_.object_radius <= 0.2, "pick_place_2d: object_radius must lie in [0,0.2]");
    const double ro = p_.object_radius;
    AxisBox object_bounds(Point{ro, ro}, Point{1.0 - ro, 1.0 - ro});
    require(object_bounds.contains(Point{p_.object_x, p_.object_y}, 0.0),
            "pick_place_2d: object must lie in the object workspace");
    require(object_bounds.contains(Point{p_.goal_x, p_.goal_y}, 0.0),
            "pick_place_2d: goal must lie in the object workspace");
    if (p_.obstacles) {
        polygons_.push_back(box_polygon(0.2, 0.5, 0.35, 0.6));
        polygons_.push_back(box_polygon(0.65, 0.15, 0.85, 0.25));
        for (const auto& poly : polygons_) {
            require(point_in_polygon(Point{p_.object_x, p_.object_y}, poly) == PolygonSide::outside &&
                        point_in_polygon(Point{p_.goal_x, p_.goal_y}, poly) == PolygonSide::outside,
                    "pick_place_2d: object or goal overlaps an obstacle");
        }
    }
    require(transit_world().point_valid(start()), "pick_place_2d: start is not a valid robot position");
}

AxisBox PickPlace2D::robot_bounds() const {
    const double r = p_.robot_radius;
    return AxisBox(Point{r, r}, Point{1.0 - r, 1.0 - r});
}

World PickPlace2D::transit_world() const {
    World w(robot_bounds());
    if (grasp_offset() > 0.0) w.add(BallObstacle{Point{p_.object_x, p_.object_y}, grasp_offset()});
    for (const auto& poly : polygons_) w.add(poly);
    return w;
}

Point PickPlace2D::grasp(double theta) const { return Point{p_.object_x, p_.object_y} + unit(theta) * grasp_offset(); }

Point PickPlace2D::place(double theta) const { return Point{p_.goal_x, p_.goal_y} + unit(theta) * grasp_offset(); }

std::optional<long> PickPlace2D::transfer_index(const OrbitKey& key) {
    static const std::string prefix = "transfer:";
    if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) return std::nullopt;
    long k = 0;
    for (std::size_t i = prefix.size(); i < key.size(); ++i) {
        if (key[i] < '0' || key[i] > '9' || k > kKeyCount) return std::nullopt;
        k = k * 10 + (key[i] - '0');
    }
    if (k >= kKeyCount) return std::nullopt;
    return k;
}

namespace {

// Robot box while carrying: the robot must stay in its bounds and the object
// centre (robot minus the grasp offset) in the object's bounds.
std::optional<AxisBox> carry_box(const AxisBox& robot, double object_radius, const Point& shift) {
    double lo[2], hi[2];
    for (std::size_t i = 0; i < 2; ++i) {
        lo[i] = std::max(robot.lo()[i], object_radius + shift[i]);
        hi[i] = std::min(robot.hi()[i], 1.0 - object_radius + shift[i]);
        if (!(hi[i] - lo[i] > 1e-12)) return std::nullopt;
    }
    return AxisBox(Point{lo[0], lo[1]}, Point{hi[0], hi[1]});
}

PolygonObstacle translated(const PolygonObstacle& poly, const Point& shift) {
    std::vector<Point> v;
    for (const auto& q : poly.vertices()) v.push_back(q + shift);
    return PolygonObstacle(std::move(v));
}

}  // namespace

OrbitSpec PickPlace2D::orbit(const OrbitKey& key) const {
    if (key == "transit") {
        std::vector<Point> extra;
        if (grasp_offset() == 0.0) extra.push_back(Point{p_.object_x, p_.object_y});
        return OrbitSpec("transit", "transit", transit_world(), std::move(extra));
    }
    const auto k = transfer_index(key);
    if (!k) throw UsageError("pick_place_2d: unknown orbit '" + key + "'");
    const double theta = key_angle(*k);
    const Point shift = unit(theta) * grasp_offset();
    const auto box = carry_box(robot_bounds(), p_.object_radius, shift);
    if (!box) throw UsageError("pick_place_2d: grasp angle of '" + key + "' leaves no room to carry the object");
    World w(*box);
    for (const auto& poly : polygons_) {
        w.add(poly);
        w.add(translated(poly, shift));
    }
    return OrbitSpec(key, "transfer", std::move(w), {grasp(theta), place(theta)});
}

std::vector<TransitionState> PickPlace2D::sample_transitions(const OrbitSpec& from, Rng& rng,
                                                             std::size_t count) const {
    std::vector<TransitionState> out;
    if (from.key() != "transit") return out;
    for (std::size_t i = 0; i < count; ++i) {
        const double theta = rng.uniform(0.0, kTwoPi);
        const long k = std::lround(theta / kKeyResolution) % kKeyCount;
        const double snapped = key_angle(k);
        const Point g = grasp(snapped);
        if (!from.valid(g)) continue;
        if (!carry_box(robot_bounds(), p_.object_radius, unit(snapped) * grasp_offset())) continue;
        out.push_back({"transit", transfer_key(k), g, g});
    }
    return out;
}

bool PickPlace2D::is_goal(const OrbitKey& orbit, const Point& p) const {
    const auto k = transfer_index(orbit);
    return k && p.dim() == 2 && distance(p, place(key_angle(*k))) <= kGoalTolerance;
}

std::vector<Point> PickPlace2D::goal_configurations(const OrbitKey& orbit) const {
    const auto k = transfer_index(orbit);
    if (!k) return {};
    return {place(key_angle(*k))};
}

double PickPlace2D::cost_at(double theta) const {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (!polygons_.empty()) throw NoOracleError("no oracle for this variant");
    const Point g = grasp(theta);
    const Point q = place(theta);
    const AxisBox bounds = robot_bounds();
    if (!bounds.contains(g, 0.0) || !bounds.contains(q, 0.0)) return kInf;
    if (!carry_box(bounds, p_.object_radius, unit(theta) * grasp_offset())) return kInf;

    const Point s = start();
    const Point o{p_.object_x, p_.object_y};
    const double carry = distance(o, Point{p_.goal_x, p_.goal_y});
    const double R = grasp_offset();
    const double d = distance(s, o);
    if (R == 0.0) return d + carry;
    // Shortest way around the disc: straight when the grasp point is visible,
    // otherwise tangent segment plus arc.
    const double alpha = std::atan2(s[1] - o[1], s[0] - o[0]);
    double delta = std::fmod(std::abs(theta - alpha), kTwoPi);
    if (delta > std::numbers::pi) delta = kTwoPi - delta;
    const double beta = std::acos(std::clamp(R / d, -1.0, 1.0));
    const double reach = delta <= beta ? distance(s, g) : std::sqrt(std::max(0.0, d * d - R * R)) + R * (delta - beta);
    return reach + carry;
}

std::pair<double, double> PickPlace2D::minimize_cost(std::size_t grid) const {
    if (grid < 3) throw UsageError("minimize_cost: grid must have at least 3 values");
    std::vector<double> f(grid);
    const double step = kTwoPi / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) f[i] = cost_at(step * static_cast<double>(i));

    std::pair<double, double> best{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < grid; ++i) {
        const double left = f[(i + grid - 1) % grid];
        const double right = f[(i + 1) % grid];
        if (!std::isfinite(f[i]) || f[i] > left || f[i] > right) continue;
        if (f[i] == left && f[i] == right) {
            if (f[i] < best.second) best = {step * static_cast<double>(i), f[i]};
            continue;
        }
        double a = step * (static_cast<double>(i) - 1.0);
        double b = step * (static_cast<double>(i) + 1.0);
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double m1 = a + (b - a) / 3.0;
            const double m2 = b - (b - a) / 3.0;
            if (cost_at(m1) <= cost_at(m2)) b = m2; else a = m1;
        }
        double theta = std::fmod(0.5 * (a + b) + kTwoPi, kTwoPi);
        double c = cost_at(theta);
        if (!(c <= f[i])) {
            theta = step * static_cast<double>(i);
            c = f[i];
        }
        if (c < best.second) best = {theta, c};
    }
    return best;
}

OracleResult PickPlace2D::oracle() const {
    if (!polygons_.empty()) throw NoOracleError("no oracle for this variant");
    const auto [theta_opt, cost] = minimize_cost(10000);
    if (!std::isfinite(cost)) throw GeometryError("pick_place_2d: no feasible grasp");

    // Witness through the nearest keyed grasp orbit.
    const long k = std::lround(theta_opt / kKeyResolution) % kKeyCount;
    const double theta = key_angle(k);
    const Point s = start();
    const Point o{p_.object_x, p_.object_y};
    const double R = grasp_offset();
    std::vector<Point> reach{s};
    if (R > 0.0) {
        const double alpha = std::atan2(s[1] - o[1], s[0] - o[0]);
        double delta = std::remainder(theta - alpha, kTwoPi);
        const double beta = std::acos(std::clamp(R / distance(s, o), -1.0, 1.0));
        if (std::abs(delta) > beta) {
            const double dir = delta > 0 ? 1.0 : -1.0;
            const double from = alpha + dir * beta;
            const double sweep = std::abs(delta) - beta;
            const int pieces = std::max(1, static_cast<int>(std::ceil(sweep / 0.05)));
            const double h = sweep / pieces;
            reach.push_back(o + unit(from) * R);
            // Vertices on the circumscribed polygon keep every chord off the disc.
            for (int j = 0; j < pieces; ++j) {
                reach.push_back(o + unit(from + dir * h * (j + 0.5)) * (R / std::cos(0.5 * h)));
            }
        }
    }
    reach.push_back(grasp(theta));

    OracleResult out{cost, {}};
    const OrbitKey key = transfer_key(k);
    out.witness.segments.push_back({"transit", std::move(reach)});
    out.witness.transitions.push_back({"transit", key, grasp(theta), grasp(theta)});
    out.witness.segments.push_back({key, {grasp(theta), place(theta)}});
    out.witness.total_cost = summed_length(out.witness);
    return out;
}

// ------------------------------------------------------------- TriangleCavity

std::vector<Point> convex_hull(std::vector<Point> pts) {
    for (const auto& p : pts) {
        if (p.dim() != 2) throw UsageError("convex_hull: points must be 2D");
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto turn = [](const Point& o, const Point& a, const Point& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (const auto& p : pts) {
            while (hull.size() >= base + 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    return hull;
}

PolygonObstacle configuration_obstacle(const PolygonObstacle& obstacle, const std::vector<Point>& robot) {
    std::vector<Point> pts;
    for (const auto& v : obstacle.vertices()) {
        for (const auto& r : robot) pts.push_back(v - r);
    }
    return PolygonObstacle(convex_hull(std::move(pts)));
}

namespace {

World cavity_world(const TriangleCavityParams& p, std::vector<PolygonObstacle>& workspace) {
    constexpr double kPi = std::numbers::pi;
    require(p.robot_half_angle > 0.0 && p.cavity_half_angle < 80.0 * kPi / 180.0,
            "triangle_cavity: half angles must lie in (0, 80) degrees");
    require(p.robot_half_angle < p.cavity_half_angle,
            "triangle_cavity: robot half angle must be smaller than the cavity half angle");
    require(p.robot_height > 0.0 && p.robot_height <= 0.3, "triangle_cavity: robot_height must lie in (0, 0.3]");
    require(p.cavity_depth > 0.0 && p.cavity_depth < TriangleCavity::kFloorHeight,
            "triangle_cavity: cavity_depth must lie in (0, 0.3)");

    const double top = TriangleCavity::kFloorHeight;
    const double apex_y = top - p.cavity_depth;
    const double half_mouth = p.cavity_depth * std::tan(p.cavity_half_angle);
    const double spread = p.robot_height * std::tan(p.robot_half_angle);
    const double cx = p.cavity_x;
    require(cx - half_mouth > 0.25 + spread + 0.02 && cx + half_mouth < 1.0 - spread - 0.02,
            "triangle_cavity: cavity_x puts the cavity mouth against the ledge or the wall");
    require(spread < 0.45 && 1.0 - p.robot_height > 0.6, "triangle_cavity: robot too large for the workspace");

    // Two convex floor pieces whose union is the floor with a V notch.
    const double skirt = 0.5 * apex_y * std::tan(p.cavity_half_angle);
    workspace.clear();
    workspace.emplace_back(std::vector<Point>{Point{0.0, 0.0}, Point{cx + skirt, 0.0}, Point{cx, apex_y},
                                              Point{cx - half_mouth, top}, Point{0.0, top}});
    workspace.emplace_back(std::vector<Point>{Point{cx - skirt, 0.0}, Point{1.0, 0.0}, Point{1.0, top},
                                              Point{cx + half_mouth, top}, Point{cx, apex_y}});
    workspace.push_back(box_polygon(0.05, top, 0.25, 0.6));

    const std::vector<Point> robot{Point{0.0, 0.0}, Point{-spread, p.robot_height}, Point{spread, p.robot_height}};
    World w(AxisBox(Point{spread, 0.0}, Point{1.0 - spread, 1.0 - p.robot_height}));
    for (const auto& o : workspace) w.add(configuration_obstacle(o, robot));
    return w;
}

}  // namespace

TriangleCavity::TriangleCavity(TriangleCavityParams params)
    : p_(params), world_(cavity_world(p_, workspace_)) {}

Point TriangleCavity::start() const { return Point{0.25, 0.6}; }

Point TriangleCavity::goal() const { return Point{p_.cavity_x, kFloorHeight - p_.cavity_depth}; }

OrbitSpec TriangleCavity::orbit(const OrbitKey& key) const {
    if (key != "free") throw UsageError("triangle_cavity: unknown orbit '" + key + "'");
    return OrbitSpec("free", "free", world_);
}

std::vector<TransitionState> TriangleCavity::sample_transitions(const OrbitSpec&, Rng&, std::size_t) const {
    return {};
}

bool TriangleCavity::is_goal(const OrbitKey& orbit, const Point& p) const {
    return orbit == "free" && p.dim() == 2 && distance(p, goal()) <= kGoalTolerance;
}

std::vector<Point> TriangleCavity::goal_configurations(const OrbitKey& orbit) const {
    if (orbit != "free") return {};
    return {goal()};
}

OracleResult TriangleCavity::oracle() const {
    const auto path = visibility_shortest_path(world_, start(), goal());
    if (!path) throw GeometryError("triangle_cavity: goal unreachable");
    OracleResult out{path->cost, {}};
    out.witness.segments.push_back({"free", path->points});
    out.witness.total_cost = summed_length(out.witness);
    return out;
}

// -------------------------------------------------------------------- factory

namespace {

struct ParamReader {
    const std::string& id;
    const ScenarioParams& params;
    std::vector<std::string> names;

    void read(const std::string& name, double& into) {
        names.push_back(name);
        auto it = params.find(name);
        if (it == params.end()) return;
        if (!std::isfinite(it->second)) throw UsageError(id + ": parameter '" + name + "' must be finite");
        into = it->second;
    }
    void read(const std::string& name, bool& into) {
        double v = into ? 1.0 : 0.0;
        read(name, v);
        if (v != 0.0 && v != 1.0) throw UsageError(id + ": parameter '" + name + "' must be 0 or 1");
        into = v == 1.0;
    }
    void read_degrees(const std::string& name, double& into) {
        double deg = into * 180.0 / std::numbers::pi;
        read(name, deg);
        into = deg * std::numbers::pi / 180.0;
    }
    void finish() const {
        for (const auto& [key, value] : params) {
            if (std::find(names.begin(), names.end(), key) == names.end()) {
                throw UsageError(id + ": unknown parameter '" + key + "'");
            }
        }
    }
};

template <class Fn>
auto with_reader(const std::string& id, const ScenarioParams& params, Fn&& fn) {
    ParamReader r{id, params, {}};
    auto out = fn(r);
    r.finish();
    return out;
}

std::unique_ptr<Scenario> make(const std::string& id, const ScenarioParams& params, ParamReader* names_only) {
    auto gripper = [&](ParamReader& r) -> std::unique_ptr<Scenario> {
        GripperLineParams p;
        r.read("start_x", p.start_x);
        r.read("start_g", p.start_g);
        r.read("object_x", p.object_x);
        r.read("grasp_g", p.grasp_g);
        r.read("notch_half_width", p.notch_half_width);
        r.read("goal_x", p.goal_x);
        r.read("trivial_goal", p.trivial_goal);
        if (names_only) return nullptr;
        return std::make_unique<GripperLine>(p);
    };
    auto pick = [&](ParamReader& r) -> std::unique_ptr<Scenario> {
        PickPlaceParams p;
        p.obstacles = id == "pick_place_2d_obstacles";
        r.read("start_x", p.start_x);
        r.read("start_y", p.start_y);
        r.read("object_x", p.object_x);
        r.read("object_y", p.object_y);
        r.read("goal_x", p.goal_x);
        r.read("goal_y", p.goal_y);
        r.read("robot_radius", p.robot_radius);
        r.read("object_radius", p.object_radius);
        if (names_only) return nullptr;
        return std::make_unique<PickPlace2D>(p);
    };
    auto cavity = [&](ParamReader& r) -> std::unique_ptr<Scenario> {
        TriangleCavityParams p;
        r.read_degrees("cavity_half_angle_deg", p.cavity_half_angle);
        r.read_degrees("robot_half_angle_deg", p.robot_half_angle);
        r.read("robot_height", p.robot_height);
        r.read("cavity_depth", p.cavity_depth);
        r.read("cavity_x", p.cavity_x);
        if (names_only) return nullptr;
        return std::make_unique<TriangleCavity>(p);
    };

    auto run = [&](auto&& fn) {
        if (names_only) return fn(*names_only);
        return with_reader(id, params, fn);
    };
    if (id == "gripper_line") return run(gripper);
    if (id == "pick_place_2d" || id == "pick_place_2d_obstacles") return run(pick);
    if (id == "triangle_cavity") return run(cavity);
    throw UsageError("unknown scenario id '" + id + "'");
}

}  // namespace

std::unique_ptr<Scenario> build_scenario(const std::string& id, const ScenarioParams& params) {
    return make(id, params, nullptr);
}

std::vector<std::string> scenario_parameter_names(const std::string& id) {
    const ScenarioParams none;
    ParamReader r{id, none, {}};
    make(id, none, &r);
    return r.names;
}

}  // namespace tamp
