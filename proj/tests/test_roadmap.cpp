#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "support.hpp"
#include "tamp/errors.hpp"
#include "tamp/roadmap.hpp"

using namespace tamp;

namespace {

World unit_world() { return World(AxisBox(Point{0.0, 0.0}, Point{1.0, 1.0})); }

long double closed_form_prm(long double n, int d, long double mu) {
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double ball = std::pow(pi, d / 2.0L) / std::tgamma(d / 2.0L + 1.0L);
    return 2.0L * std::pow(1.0L + 1.0L / d, 1.0L / d) * std::pow(mu / ball, 1.0L / d) *
           std::pow(std::log(n) / n, 1.0L / d);
}

}  // namespace

TEST(Radius, UnitBallVolumes) {
    EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
    EXPECT_NEAR(unit_ball_volume(2), 3.1415927, 1e-7);
    EXPECT_NEAR(unit_ball_volume(3), 4.1887902, 1e-7);
    EXPECT_THROW(unit_ball_volume(0), UsageError);
}

TEST(Radius, KnownValues) {
    EXPECT_NEAR(prm_star_radius(100, 2, 1.0), 0.29657, 5e-6);
    EXPECT_NEAR(fobt_radius(100, 2, 1.0), 0.59315, 2e-5);
    EXPECT_NEAR(fobt_radius(8, 1, 1.0), 4.0 * 2.0 * 0.5 * std::log(8.0) / 8.0, 1e-12);
    EXPECT_NEAR(fobt_radius(8, 1, 1.0), 1.0397, 1e-4);
    const double rel = std::abs(prm_star_radius(100, 2, 1.0) - static_cast<double>(closed_form_prm(100, 2, 1))) /
                       static_cast<double>(closed_form_prm(100, 2, 1));
    EXPECT_LE(rel, 1e-12);
}

TEST(Radius, TenfoldShrinkFactor) {
    const double ratio = prm_star_radius(1000, 2, 1.0) / prm_star_radius(100, 2, 1.0);
    EXPECT_NEAR(ratio, std::sqrt(std::log(1000.0) / (10.0 * std::log(100.0))), 1e-12);
}

TEST(Radius, FobtIsExactlyDouble) {
    for (std::uint64_t n : {2ull, 3ull, 10ull, 100ull, 12345ull}) {
        for (int d = 1; d <= 6; ++d) {
            for (double mu : {0.1, 1.0, 7.5}) EXPECT_EQ(fobt_radius(n, d, mu), 2.0 * prm_star_radius(n, d, mu));
        }
    }
}

TEST(Radius, DecreasingInN) {
    for (int d = 1; d <= 6; ++d) {
        for (double mu : {0.05, 1.0, 20.0}) {
            double prev = prm_star_radius(3, d, mu);
            for (std::uint64_t n = 4; n < 5000; n += 1 + n / 7) {
                const double r = prm_star_radius(n, d, mu);
                ASSERT_LT(r, prev) << "d=" << d << " mu=" << mu << " n=" << n;
                prev = r;
            }
        }
    }
}

TEST(Radius, RejectsBadInput) {
    EXPECT_THROW(prm_star_radius(1, 2, 1.0), UsageError);
    EXPECT_THROW(prm_star_radius(10, 0, 1.0), UsageError);
    EXPECT_THROW(prm_star_radius(10, 2, 0.0), UsageError);
}

TEST(RadiusRule, ParseAndName) {
    EXPECT_EQ(RadiusRule::parse("prm_star").name(), "prm_star");
    EXPECT_EQ(RadiusRule::parse("fobt").name(), "fobt");
    const auto s = RadiusRule::parse("scaled:1.5");
    EXPECT_EQ(s.mode, RadiusMode::scaled);
    EXPECT_DOUBLE_EQ(s.radius(100, 2, 1.0), 1.5 * prm_star_radius(100, 2, 1.0));
    EXPECT_THROW(RadiusRule::parse("bogus"), UsageError);
    EXPECT_THROW(RadiusRule::parse("scaled:-1"), UsageError);
    EXPECT_THROW(RadiusRule::parse("scaled:x"), UsageError);
}

TEST(Roadmap, InsertExamples) {
    const World w = unit_world();
    RoadmapGraph g(2);
    g.insert_vertex(Point{0.2, 0.5}, VertexKind::interior, 0.2, w, 1e-3);
    g.insert_vertex(Point{0.3, 0.5}, VertexKind::interior, 0.2, w, 1e-3);
    EXPECT_EQ(g.edge_count(), 1u);

    RoadmapGraph h(2);
    h.insert_vertex(Point{0.2, 0.5}, VertexKind::interior, 0.05, w, 1e-3);
    h.insert_vertex(Point{0.3, 0.5}, VertexKind::interior, 0.05, w, 1e-3);
    EXPECT_EQ(h.edge_count(), 0u);

    World wall = unit_world();
    wall.add(PolygonObstacle({Point{0.24, 0.0}, Point{0.26, 0.0}, Point{0.26, 1.0}, Point{0.24, 1.0}}));
    RoadmapGraph k(2);
    k.insert_vertex(Point{0.2, 0.5}, VertexKind::interior, 0.2, wall, 1e-3);
    k.insert_vertex(Point{0.3, 0.5}, VertexKind::interior, 0.2, wall, 1e-3);
    EXPECT_EQ(k.edge_count(), 0u);
}

TEST(Roadmap, NearestWithinIsClosed) {
    RoadmapGraph g(2);
    EXPECT_TRUE(g.nearest_within(Point{0.0, 0.0}, 1.0).empty());
    g.insert_vertex(Point{0.5, 0.0}, VertexKind::interior, 0.1, unit_world(), 1e-3);
    EXPECT_EQ(g.nearest_within(Point{0.0, 0.0}, 0.5).size(), 1u);
    EXPECT_TRUE(g.nearest_within(Point{0.0, 0.0}, 0.4999).empty());
}

TEST(Roadmap, EdgeInvariantsOverInsertionLog) {
    World w = unit_world();
    w.add(PolygonObstacle({Point{0.3, 0.3}, Point{0.7, 0.3}, Point{0.5, 0.7}}));
    Rng rng(4);
    RoadmapGraph g(2);
    for (std::uint64_t i = 1; i <= 400; ++i) {
        Point p{rng.uniform01(), rng.uniform01()};
        if (!w.point_valid(p)) continue;
        g.insert_vertex(p, VertexKind::interior, prm_star_radius(std::max<std::uint64_t>(2, g.size() + 1), 2, 1.0), w,
                        1e-3);
    }
    std::size_t counted = 0;
    for (const auto& [u, v] : g.edges()) {
        ++counted;
        const double len = distance(g.point(u), g.point(v));
        ASSERT_LE(len, g.insertion(v).radius);
        ASSERT_TRUE(segment_valid(g.point(u), g.point(v), w, 1e-3));
    }
    EXPECT_EQ(counted, g.edge_count());
    // Completeness: every later vertex is joined to all earlier ones in range.
    for (std::size_t v = 0; v < g.size(); ++v) {
        for (std::size_t u = 0; u < v; ++u) {
            const bool in_range = distance(g.point(u), g.point(v)) <= g.insertion(v).radius;
            const bool has = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                         [u](const Edge& e) { return e.to == u; });
            ASSERT_EQ(has, in_range && segment_valid(g.point(u), g.point(v), w, 1e-3));
        }
    }
}

TEST(Roadmap, FreeSpaceEdgesSurviveFinerResolution) {
    const World w = unit_world();
    Rng rng(8);
    RoadmapGraph g(2);
    for (int i = 0; i < 300; ++i) {
        g.insert_vertex(Point{rng.uniform01(), rng.uniform01()}, VertexKind::interior, 0.2, w, 1e-2);
    }
    for (const auto& [u, v] : g.edges()) ASSERT_TRUE(segment_valid(g.point(u), g.point(v), w, 5e-3));
}

TEST(Roadmap, ShortestPathExamples) {
    const World w = unit_world();
    RoadmapGraph g(2);
    g.insert_vertex(Point{0.0, 0.0}, VertexKind::query, 1e-9, w, 1e-3);
    g.insert_vertex(Point{1.0, 0.0}, VertexKind::query, 1e-9, w, 1e-3);
    g.insert_vertex(Point{0.5, 0.1}, VertexKind::interior, 0.6, w, 1e-3);
    const std::size_t target = 1;
    const auto p = shortest_path(g, 0, std::span(&target, 1));
    ASSERT_TRUE(p);
    EXPECT_EQ(p->vertices, (std::vector<std::size_t>{0, 2, 1}));
    EXPECT_NEAR(p->cost, 2.0 * std::hypot(0.5, 0.1), 1e-15);

    g.insert_vertex(Point{0.9, 0.9}, VertexKind::query, 1e-9, w, 1e-3);
    const std::size_t lone = 3;
    EXPECT_FALSE(shortest_path(g, 0, std::span(&lone, 1)));
    EXPECT_THROW(shortest_path(g, 0, std::span<const std::size_t>()), UsageError);
}

TEST(Roadmap, ShortestPathTriangleWeights) {
    // Vertices on a line give weights 1, 1 and 2 (straight); the 1-1 route and
    // the direct edge tie, and the lexicographically smaller sequence wins.
    const World w(AxisBox(Point{0.0}, Point{3.0}));
    RoadmapGraph g(1);
    g.insert_vertex(Point{0.0}, VertexKind::query, 1e-9, w, 1e-3);
    g.insert_vertex(Point{2.0}, VertexKind::query, 1e-9, w, 1e-3);
    g.insert_vertex(Point{1.0}, VertexKind::interior, 1.0, w, 1e-3);
    const std::size_t t = 1;
    const auto p = shortest_path(g, 0, std::span(&t, 1));
    ASSERT_TRUE(p);
    EXPECT_EQ(p->cost, 2.0);
    EXPECT_EQ(p->vertices, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(Roadmap, ShortestPathMatchesBruteForce) {
    Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const World w = unit_world();
        ForwardSearchTree tree;
        tree.add_node(OrbitSpec("o0", "m", w), ForwardSearchTree::kNoParent, 0);
        auto& g = tree.mutable_node(0).roadmap;
        const std::size_t n = 2 + rng.uniform_index(8);
        for (std::size_t i = 0; i < n; ++i) {
            g.insert_vertex(Point{rng.uniform01(), rng.uniform01()}, VertexKind::interior, rng.uniform(0.2, 0.8), w,
                            1e-2);
        }
        const std::size_t target = 1 + rng.uniform_index(n - 1);
        tree.mutable_node(0).goal_vertices.push_back(target);
        const auto brute = test_support::brute_force_composite(tree);
        const auto fast = shortest_path(g, 0, std::span(&target, 1));
        ASSERT_EQ(fast.has_value(), std::isfinite(brute.cost));
        if (fast) {
            ASSERT_EQ(fast->cost, brute.cost);
            ASSERT_EQ(fast->vertices, brute.vertices);
        }
    }
}

TEST(Roadmap, CostIndependentOfInsertionOrder) {
    World w = unit_world();
    w.add(PolygonObstacle({Point{0.4, 0.1}, Point{0.6, 0.1}, Point{0.6, 0.9}, Point{0.4, 0.9}}));
    Rng rng(30);
    std::vector<Point> pts{Point{0.1, 0.5}, Point{0.9, 0.5}};
    while (pts.size() < 150) {
        Point p{rng.uniform01(), rng.uniform01()};
        if (w.point_valid(p)) pts.push_back(p);
    }
    auto cost_for = [&](const std::vector<std::size_t>& order) {
        RoadmapGraph g(2);
        std::size_t s = 0, t = 0;
        for (std::size_t i : order) {
            const std::size_t v = g.insert_vertex(pts[i], VertexKind::interior, 1e-9, w, 1e-3);
            if (i == 0) s = v;
            if (i == 1) t = v;
        }
        g.rebuild(0.25, w, 1e-3);
        const auto p = shortest_path(g, s, std::span(&t, 1));
        return std::make_pair(p ? p->cost : -1.0, g.edge_count());
    };
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    const auto base = cost_for(order);
    ASSERT_GT(base.first, 0.0);
    for (int k = 0; k < 5; ++k) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
        const auto other = cost_for(order);
        EXPECT_NEAR(other.first, base.first, 1e-12);
        EXPECT_EQ(other.second, base.second);
    }
}

TEST(Roadmap, EdgeListFormat) {
    const World w = unit_world();
    RoadmapGraph g(2);
    g.insert_vertex(Point{0.1, 0.1}, VertexKind::interior, 1.0, w, 1e-3);
    g.insert_vertex(Point{0.4, 0.5}, VertexKind::interior, 1.0, w, 1e-3);
    std::ostringstream os;
    g.write_edge_list(os, "prm_star");
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# n 2 d 2", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "0 1 0.5");
}
