#include "tamp/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tamp {

OrbitSpec::OrbitSpec(OrbitKey key, std::string mode, World world, std::vector<Point> boundary_points)
    : key_(std::move(key)),
      mode_(std::move(mode)),
      world_(std::move(world)),
      mu_(world_.bounds().measure()),
      boundary_points_(std::move(boundary_points)) {
    if (!(mu_ > 0.0)) throw UsageError("orbit '" + key_ + "': bounds must have positive measure");
    for (const auto& p : boundary_points_) {
        if (p.dim() != world_.dim()) throw UsageError("orbit '" + key_ + "': boundary point dimension mismatch");
    }
}

double OrbitSpec::boundary_distance(const Point& p) const {
    double d = world_.clearance(p);
    for (const auto& q : boundary_points_) d = std::min(d, distance(p, q));
    return d;
}

Point OrbitSpec::sample_interior(Rng& rng) const {
    constexpr int kMaxAttempts = 1'000'000;
    const auto& box = world_.bounds();
    for (int i = 0; i < kMaxAttempts; ++i) {
        Point p = sample_uniform_box(box, rng);
        if (box.distance_to_faces(p) > 0.0 && world_.point_valid(p)) return p;
    }
    throw GeometryError("orbit '" + key_ + "': rejection sampling found no valid interior point");
}

bool validate_transition(const TransitionState& t, const OrbitSpec& source, const OrbitSpec& target, double tol) {
    if (t.source != source.key() || t.target != target.key()) {
        throw UsageError("validate_transition: orbit keys '" + t.source + "' -> '" + t.target +
                         "' do not match the supplied orbits");
    }
    if (t.source == t.target) return false;
    if (t.in_source.dim() != static_cast<std::size_t>(source.dimension()) ||
        t.in_target.dim() != static_cast<std::size_t>(target.dimension())) {
        return false;
    }
    auto on_boundary = [tol](const OrbitSpec& o, const Point& p) {
        return o.valid(p) && o.boundary_distance(p) <= tol;
    };
    return on_boundary(source, t.in_source) && on_boundary(target, t.in_target);
}

Cone::Cone(Point apex, Point axis, double ball_radius, double half_angle)
    : apex_(apex), axis_(axis), ball_radius_(ball_radius), half_angle_(half_angle) {
    if (apex.dim() != axis.dim()) throw UsageError("Cone: apex/axis dimension mismatch");
    const double n = axis.norm();
    if (!(n > 0.0)) throw UsageError("Cone: axis must be non-zero");
    axis_ = axis * (1.0 / n);
    if (!(ball_radius > 0.0)) throw UsageError("Cone: ball radius must be positive");
    if (!(half_angle > 0.0 && half_angle <= std::numbers::pi / 2)) {
        throw UsageError("Cone: half-angle must be in (0, pi/2]");
    }
}

bool cone_contains(const Cone& c, const Point& p) {
    if (p.dim() != c.dim()) throw UsageError("cone_contains: dimension mismatch");
    const Point v = p - c.apex();
    const double len = v.norm();
    if (len == 0.0) return true;
    if (len > c.ball_radius()) return false;
    const double cos_angle = std::clamp(v.dot(c.axis()) / len, -1.0, 1.0);
    return std::acos(cos_angle) <= c.half_angle();
}

OpeningFraction cone_opening_fraction(const Cone& c) {
    if (c.dim() == 1) return {0.5, 0.0};
    if (c.dim() == 2) return {c.half_angle() / std::numbers::pi, 0.0};
    constexpr std::size_t kSamples = 1'000'000;
    Rng rng(0x0c0ffee5eedULL);
    const std::size_t d = c.dim();
    std::array<double, Point::kMaxDim> buf{};
    std::size_t hits = 0;
    for (std::size_t s = 0; s < kSamples; ++s) {
        double r2 = 0.0;
        do {
            r2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                buf[i] = rng.uniform(-1.0, 1.0);
                r2 += buf[i] * buf[i];
            }
        } while (r2 > 1.0 || r2 == 0.0);
        const Point v(std::span<const double>(buf.data(), d));
        const double cos_angle = std::clamp(v.dot(c.axis()) / std::sqrt(r2), -1.0, 1.0);
        if (std::acos(cos_angle) <= c.half_angle()) ++hits;
    }
    const double p = static_cast<double>(hits) / kSamples;
    return {p, std::sqrt(p * (1.0 - p) / kSamples)};
}

Ball cone_interior_ball(const Cone& c, const World& world) {
    if (c.dim() != world.dim()) throw UsageError("cone_interior_ball: dimension mismatch");
    const double b = c.ball_radius();
    const double sin_a = std::sin(c.half_angle());
    // Largest ball centred at axis distance s: limited by the cone surface,
    // the spherical cap and the free-space clearance.
    auto radius_at = [&](double s) {
        const Point center = c.apex() + c.axis() * s;
        return std::min({s * sin_a, b - s, world.clearance(center)});
    };

    constexpr int kScan = 256;
    double best_s = 0.0;
    double best_r = 0.0;
    for (int i = 1; i < kScan; ++i) {
        const double s = b * i / kScan;
        const double r = radius_at(s);
        if (r > best_r) {
            best_r = r;
            best_s = s;
        }
    }
    // Refine by bisection on the bracket around the best scan point.
    if (best_r > 0.0) {
        double lo = std::max(best_s - b / kScan, 0.0);
        double hi = std::min(best_s + b / kScan, b);
        for (int it = 0; it < 60; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (radius_at(m1) < radius_at(m2)) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        const double s = 0.5 * (lo + hi);
        const double r = radius_at(s);
        if (r > best_r) {
            best_r = r;
            best_s = s;
        }
    }
    if (!(best_r > b * 1e-12)) {
        throw GeometryError("cone_interior_ball: cone has no free interior (cone condition violated)");
    }
    return {c.apex() + c.axis() * best_s, best_r};
}

}  // namespace tamp
