#pragma once

#include <string>
#include <vector>

#include "tamp/geometry.hpp"

namespace tamp {

/// Canonical orbit identifier supplied by the scenario (e.g. "transfer:1571").
/// Two transitions leading to the same key lead to the same orbit.
using OrbitKey = std::string;

/// One orbit of one mode: a chart with bounds, obstacles and measure.
///
/// The orbit boundary is the free-space boundary of `world` plus a set of
/// isolated `boundary_points` where lower-dimensional transition sets meet
/// this orbit (for example the grasp and placement configurations of a
/// transfer orbit).
class OrbitSpec {
public:
    OrbitSpec(OrbitKey key, std::string mode, World world, std::vector<Point> boundary_points = {});

    const OrbitKey& key() const { return key_; }
    const std::string& mode() const { return mode_; }
    int dimension() const { return static_cast<int>(world_.dim()); }
    const World& world() const { return world_; }
    /// Measure used for connection radii: the bounds volume, an upper bound on
    /// the valid region's measure.
    double mu() const { return mu_; }
    const std::vector<Point>& boundary_points() const { return boundary_points_; }

    bool valid(const Point& p) const { return world_.point_valid(p); }
    double boundary_distance(const Point& p) const;

    /// Uniform sample of the valid region, strictly inside the bounds.
    Point sample_interior(Rng& rng) const;

private:
    OrbitKey key_;
    std::string mode_;
    World world_;
    double mu_;
    std::vector<Point> boundary_points_;
};

/// A mode switch: the same physical state expressed in both orbit charts.
struct TransitionState {
    OrbitKey source;
    OrbitKey target;
    Point in_source;
    Point in_target;
};

inline constexpr double kTransitionTolerance = 1e-9;

/// True iff both configurations are valid in their orbits and within tol of
/// the orbit boundary. Throws UsageError when the specs do not match the
/// transition's orbit keys.
bool validate_transition(const TransitionState& t, const OrbitSpec& source, const OrbitSpec& target,
                         double tol = kTransitionTolerance);

/// Intersection of a convex cone (apex, axis, half-angle) with the ball of
/// radius `ball_radius` around the apex.
class Cone {
public:
    Cone(Point apex, Point axis, double ball_radius, double half_angle);

    const Point& apex() const { return apex_; }
    const Point& axis() const { return axis_; }
    double ball_radius() const { return ball_radius_; }
    double half_angle() const { return half_angle_; }
    std::size_t dim() const { return apex_.dim(); }

private:
    Point apex_;
    Point axis_;
    double ball_radius_;
    double half_angle_;
};

bool cone_contains(const Cone& c, const Point& p);

struct OpeningFraction {
    double value;
    double std_error;  ///< zero when exact
};

/// Cone volume over ball volume. Exact in 2D; Monte-Carlo with 1e6 samples
/// and a fixed seed otherwise.
OpeningFraction cone_opening_fraction(const Cone& c);

struct Ball {
    Point center;
    double radius;
};

/// A ball inside cone ∩ free interior, searched along the cone axis. In an
/// empty world this is the largest inscribed ball. Throws GeometryError when
/// no ball with positive radius exists.
Ball cone_interior_ball(const Cone& c, const World& world);

}  // namespace tamp
