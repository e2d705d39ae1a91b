#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tamp/errors.hpp"
#include "tamp/scenario_config.hpp"
#include "tamp/scenarios.hpp"

using namespace tamp;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_witness_valid(const Scenario& s) {
    const auto o = s.oracle();
    const auto v = validate_tamp_path(o.witness, s, 0.0);
    for (const auto& x : v) ADD_FAILURE() << s.id() << ": " << x.kind << ": " << x.detail;
    EXPECT_NEAR(o.witness.total_cost, o.cost, 1e-6 * std::max(1.0, o.cost));
}

}  // namespace

TEST(Build, DefaultsAndIds) {
    for (const char* id : {"gripper_line", "pick_place_2d", "pick_place_2d_obstacles", "triangle_cavity"}) {
        const auto s = build_scenario(id, {});
        EXPECT_EQ(s->id(), id);
        EXPECT_TRUE(s->orbit(s->start_orbit()).valid(s->start()));
        EXPECT_FALSE(scenario_parameter_names(id).empty());
    }
    EXPECT_THROW(build_scenario("nope", {}), UsageError);
    EXPECT_THROW(build_scenario("gripper_line", {{"bogus", 1.0}}), UsageError);
    EXPECT_THROW(build_scenario("gripper_line", {{"object_x", 0.95}}), UsageError);
    EXPECT_THROW(build_scenario("gripper_line", {{"trivial_goal", 0.5}}), UsageError);
    EXPECT_THROW(build_scenario("pick_place_2d", {{"robot_radius", -0.1}}), UsageError);
    EXPECT_THROW(build_scenario("pick_place_2d", {{"start_x", 0.5}, {"start_y", 0.3}}), UsageError);
    EXPECT_THROW(build_scenario("triangle_cavity", {{"robot_half_angle_deg", 40.0}}), UsageError);
    EXPECT_THROW(build_scenario("triangle_cavity", {{"cavity_x", 0.3}}), UsageError);
    EXPECT_THROW(build_scenario("triangle_cavity", {{"cavity_depth", std::nan("")}}), UsageError);
}

TEST(GripperLine, TwoModesOneApexTransition) {
    const GripperLine s({});
    EXPECT_NE(s.orbit("transit").mode(), s.orbit("grasped").mode());
    EXPECT_THROW(s.orbit("other"), UsageError);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto ts = s.sample_transitions(s.orbit("transit"), rng, 3);
        ASSERT_EQ(ts.size(), 1u);
        EXPECT_EQ(ts[0].in_source, s.apex());
        EXPECT_TRUE(validate_transition(ts[0], s.orbit("transit"), s.orbit("grasped")));
    }
    EXPECT_TRUE(s.sample_transitions(s.orbit("grasped"), rng, 3).empty());
}

TEST(GripperLine, ApexIsNonSmooth) {
    const GripperLine s({});
    const World w = s.transit_world();
    for (double eps = 0.1; eps > 1e-9; eps /= 10) {
        // The point straight below the apex lies inside the notch.
        EXPECT_FALSE(w.point_valid(s.apex() + Point{0.0, -eps / 2}));
    }
    const Ball ball = cone_interior_ball(Cone(s.apex(), Point{0.0, 1.0}, 0.2, kPi / 2), w);
    EXPECT_GT(ball.radius, 0.0);
}

TEST(GripperLine, Oracle) {
    const GripperLine s({});
    const auto o = s.oracle();
    EXPECT_NEAR(o.cost, std::hypot(0.4, 0.5) + 0.3, 1e-14);
    const auto grid = grid_shortest_path(s.transit_world(), s.start(), s.apex(), 400);
    ASSERT_TRUE(grid);
    EXPECT_NEAR(*grid + 0.3, o.cost, 0.01 * o.cost);
    expect_witness_valid(s);

    GripperLineParams trivial;
    trivial.start_x = 0.6;
    trivial.start_g = 0.8;
    trivial.trivial_goal = true;
    EXPECT_EQ(GripperLine(trivial).oracle().cost, 0.0);
    expect_witness_valid(GripperLine(trivial));
}

TEST(PickPlace, GraspSamplerUniformAndValid) {
    const PickPlace2D s({});
    const auto transit = s.orbit("transit");
    Rng rng(77);
    const auto ts = s.sample_transitions(transit, rng, 10000);
    ASSERT_EQ(ts.size(), 10000u);
    std::vector<double> thetas;
    for (const auto& t : ts) {
        ASSERT_TRUE(validate_transition(t, transit, s.orbit(t.target)));
        const auto k = PickPlace2D::transfer_index(t.target);
        ASSERT_TRUE(k);
        ASSERT_LE(distance(t.in_source, s.grasp(PickPlace2D::key_angle(*k))), 1e-15);
        double th = std::atan2(t.in_source[1] - 0.3, t.in_source[0] - 0.5);
        if (th < 0) th += 2 * kPi;
        thetas.push_back(th);
    }
    EXPECT_GT(test_support::ks_p_value(thetas, [](double x) { return x / (2 * kPi); }), 0.01);
    EXPECT_TRUE(s.sample_transitions(s.orbit(ts[0].target), rng, 5).empty());
}

TEST(PickPlace, TransferKeys) {
    EXPECT_EQ(PickPlace2D::transfer_index("transfer:1571"), 1571);
    EXPECT_FALSE(PickPlace2D::transfer_index("transfer:"));
    EXPECT_FALSE(PickPlace2D::transfer_index("transfer:6284"));
    EXPECT_FALSE(PickPlace2D::transfer_index("transfer:12a"));
    EXPECT_FALSE(PickPlace2D::transfer_index("transit"));
    const PickPlace2D s({});
    EXPECT_THROW(s.orbit("transfer:x"), UsageError);
    const auto o = s.orbit("transfer:1571");
    EXPECT_EQ(o.boundary_points().size(), 2u);
    EXPECT_TRUE(s.is_goal("transfer:1571", s.place(1.571)));
    EXPECT_FALSE(s.is_goal("transit", s.place(1.571)));
}

TEST(PickPlace, OracleMatchesClosedForm) {
    const PickPlace2D s({});
    const double closed = distance(Point{0.15, 0.2}, Point{0.5, 0.3}) - 0.1 + 0.45;
    const auto o = s.oracle();
    EXPECT_NEAR(o.cost, closed, 1e-4 * closed);
    // Grid alone and refined search agree.
    double grid_best = INFINITY;
    for (int i = 0; i < 10000; ++i) grid_best = std::min(grid_best, s.cost_at(2 * kPi * i / 10000.0));
    EXPECT_LE(std::abs(grid_best - o.cost) / o.cost, 1e-4);
    EXPECT_LE(o.cost, grid_best);
    expect_witness_valid(s);
}

TEST(PickPlace, DegenerateCollinear) {
    PickPlaceParams p;
    p.start_x = 0.2;
    p.start_y = 0.2;
    p.object_x = 0.5;
    p.object_y = 0.5;
    p.goal_x = 0.8;
    p.goal_y = 0.8;
    p.robot_radius = 0.0;
    p.object_radius = 0.0;
    const PickPlace2D s(p);
    EXPECT_NEAR(s.oracle().cost, 2.0 * std::hypot(0.3, 0.3), 1e-12);
    expect_witness_valid(s);
    Rng rng(3);
    for (const auto& t : s.sample_transitions(s.orbit("transit"), rng, 50)) {
        EXPECT_TRUE(validate_transition(t, s.orbit("transit"), s.orbit(t.target)));
    }
}

TEST(PickPlace, ObstacledHasNoOracle) {
    const auto s = build_scenario("pick_place_2d_obstacles", {});
    EXPECT_THROW(s->oracle(), NoOracleError);
    Rng rng(4);
    const auto transit = s->orbit("transit");
    for (const auto& t : s->sample_transitions(transit, rng, 500)) {
        EXPECT_TRUE(validate_transition(t, transit, s->orbit(t.target)));
    }
}

TEST(PickPlace, WitnessAroundTheDisc) {
    PickPlaceParams p;
    p.start_x = 0.5;
    p.start_y = 0.1;
    p.goal_x = 0.5;
    p.goal_y = 0.45;
    const PickPlace2D s(p);
    // The best grasp faces the start; far-side grasps need the arc.
    const double far = s.cost_at(kPi / 2);
    EXPECT_GT(far, s.cost_at(-kPi / 2));
    expect_witness_valid(s);
}

TEST(TriangleCavity, GeometryAndCone) {
    const TriangleCavity s({});
    const World& w = s.configuration_world();
    EXPECT_TRUE(w.point_valid(s.start()));
    EXPECT_TRUE(w.point_valid(s.goal()));
    EXPECT_EQ(w.clearance(s.start()), 0.0);
    EXPECT_EQ(w.clearance(s.goal()), 0.0);
    EXPECT_TRUE(s.sample_transitions(s.orbit("free"), *std::make_unique<Rng>(1), 5).empty());

    const double b = 0.05;
    const Cone cone(s.goal(), Point{0.0, 1.0}, b, kPi / 6);
    EXPECT_NEAR(cone_opening_fraction(cone).value, 1.0 / 6.0, 1e-15);
    Rng rng(12);
    int valid_seen = 0;
    for (int i = 0; i < 20000; ++i) {
        const double r = b * std::sqrt(rng.uniform01());
        const double a = rng.uniform(0, 2 * kPi);
        const Point p = s.goal() + Point{r * std::cos(a), r * std::sin(a)};
        const double ang = std::abs(a - kPi / 2);
        if (std::abs(ang - kPi / 6) < 1e-6) continue;
        if (w.point_valid(p)) {
            ++valid_seen;
            ASSERT_TRUE(cone_contains(cone, p)) << p.to_string();
        }
        if (cone_contains(cone, p)) ASSERT_TRUE(w.point_valid(p)) << p.to_string();
    }
    EXPECT_GT(valid_seen, 1000);
    EXPECT_GT(cone_interior_ball(cone, w).radius, 0.0);
}

TEST(TriangleCavity, MinkowskiObstacle) {
    const PolygonObstacle sq({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}});
    const std::vector<Point> robot{Point{0.0, 0.0}, Point{-0.1, 0.2}, Point{0.1, 0.2}};
    const auto c = configuration_obstacle(sq, robot);
    EXPECT_EQ(c.vertices().size(), 6u);
    EXPECT_NEAR(c.area(), 1.0 + 2 * 0.2 * 1.0 + 0.2 * 0.2 * 0.5 * 2 / 2 + 0.2 * 0.2, 0.05);
    // A robot placement collides exactly when the reference point is inside.
    EXPECT_EQ(point_in_polygon(Point{0.5, -0.1}, c), PolygonSide::inside);
    EXPECT_EQ(point_in_polygon(Point{0.5, 1.0}, c), PolygonSide::boundary);
    EXPECT_EQ(point_in_polygon(Point{0.5, -0.3}, c), PolygonSide::outside);
    EXPECT_EQ(convex_hull({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 0.0}, Point{0.0, 1.0}, Point{0.2, 0.2}}).size(),
              3u);
}

TEST(TriangleCavity, OracleMatchesGrid) {
    const TriangleCavity s({});
    const auto o = s.oracle();
    const double mouth = s.params().cavity_x - 0.1 * std::tan(kPi / 6);
    const double expected = distance(s.start(), Point{mouth, 0.3}) + distance(Point{mouth, 0.3}, s.goal());
    EXPECT_NEAR(o.cost, expected, 1e-12);
    const auto grid = grid_shortest_path(s.configuration_world(), s.start(), s.goal(), 1000);
    ASSERT_TRUE(grid);
    const double cell = 1e-3;
    EXPECT_GE(*grid, o.cost - 4 * cell);
    EXPECT_LE(*grid, 1.03 * o.cost + 4 * cell);
    expect_witness_valid(s);
}

TEST(Config, ParsesAndRejects) {
    const auto cfg = parse_scenario_config(R"({"schema_version": 1, "scenario": "triangle_cavity"})");
    EXPECT_EQ(cfg.id, "triangle_cavity");
    EXPECT_EQ(cfg.planner.samples_per_expansion, 1u);
    const auto pp = parse_scenario_config(
        R"({"schema_version": 1, "scenario": "pick_place_2d", "params": {"robot_radius": 0.04},
            "planner": {"samples_per_expansion": 7}})");
    EXPECT_EQ(pp.planner.samples_per_expansion, 7u);
    EXPECT_DOUBLE_EQ(dynamic_cast<const PickPlace2D&>(*pp.scenario).params().robot_radius, 0.04);
    const auto flag = parse_scenario_config(
        R"({"schema_version": 1, "scenario": "gripper_line", "params": {"trivial_goal": true, "start_g": 0.8}})");
    EXPECT_TRUE(dynamic_cast<const GripperLine&>(*flag.scenario).params().trivial_goal);

    for (const char* bad : {
             "not json",
             "[]",
             R"({"scenario": "gripper_line"})",
             R"({"schema_version": 2, "scenario": "gripper_line"})",
             R"({"schema_version": 1})",
             R"({"schema_version": 1, "scenario": "gripper_line", "extra": 1})",
             R"({"schema_version": 1, "scenario": "gripper_line", "params": {"start_x": "a"}})",
             R"({"schema_version": 1, "scenario": "gripper_line", "planner": {"samples_per_expansion": 0}})",
             R"({"schema_version": 1, "scenario": "gripper_line", "planner": {"bogus": 1}})",
         }) {
        EXPECT_THROW(parse_scenario_config(bad), UsageError) << bad;
    }
    EXPECT_THROW(load_scenario_config("/nonexistent/file.json"), UsageError);
}
