#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tamp/errors.hpp"
#include "tamp/rng.hpp"

namespace tamp {

/// Tolerance used to classify a point as lying on an obstacle or bounds
/// boundary, in workspace units.
inline constexpr double kBoundaryTolerance = 1e-12;

/// A configuration: a finite point in a d-dimensional chart.
///
/// Dimension is fixed at construction and coordinates are always finite.
/// Storage is inline, so points are cheap to copy.
class Point {
public:
    static constexpr std::size_t kMaxDim = 8;

    explicit Point(std::size_t dim);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    std::size_t dim() const { return dim_; }
    double operator[](std::size_t i) const { return c_[i]; }
    std::span<const double> coords() const { return {c_.data(), dim_}; }

    Point operator+(const Point& o) const;
    Point operator-(const Point& o) const;
    Point operator*(double s) const;

    double dot(const Point& o) const;
    double norm() const;

    /// Returns a copy with coordinate i replaced.
    Point with(std::size_t i, double value) const;

    bool operator==(const Point& o) const;

    std::string to_string() const;

private:
    struct Unchecked {};
    Point(Unchecked, std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) {}

    std::array<double, kMaxDim> c_{};
    std::uint8_t dim_ = 0;
};

/// Euclidean distance. Throws UsageError on dimension mismatch.
double distance(const Point& a, const Point& b);

/// Squared distance without the dimension check; hot-path helper.
inline double squared_distance_unchecked(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Axis-aligned box [lo, hi].
class AxisBox {
public:
    AxisBox(Point lo, Point hi);

    const Point& lo() const { return lo_; }
    const Point& hi() const { return hi_; }
    std::size_t dim() const { return lo_.dim(); }

    double measure() const;
    double diagonal() const { return distance(lo_, hi_); }
    bool contains(const Point& p, double tol = kBoundaryTolerance) const;
    /// Distance from an inside point to the nearest face.
    double distance_to_faces(const Point& p) const;

private:
    Point lo_;
    Point hi_;
};

Point sample_uniform_box(const AxisBox& box, Rng& rng);

enum class PolygonSide { inside, boundary, outside };

/// Simple 2D polygon. Vertices are stored counter-clockwise; a clockwise input
/// is reversed. Self-intersecting input is rejected.
class PolygonObstacle {
public:
    explicit PolygonObstacle(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    const AxisBox& bounding_box() const { return bbox_; }
    double area() const;

private:
    std::vector<Point> vertices_;
    AxisBox bbox_;
};

PolygonSide point_in_polygon(const Point& p, const PolygonObstacle& poly);

/// Distance from p to the polygon's boundary.
double distance_to_polygon_boundary(const Point& p, const PolygonObstacle& poly);

/// Open ball obstacle {x : |x - center| < radius}, any dimension.
struct BallObstacle {
    Point center;
    double radius;
};

/// Closed segment-point distance.
double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// A bounded region of a chart minus obstacles. Valid points are the closure
/// of the free space: boundary points of bounds and obstacles are valid.
class World {
public:
    explicit World(AxisBox bounds) : bounds_(std::move(bounds)) {}

    World& add(PolygonObstacle poly);
    World& add(BallObstacle ball);

    const AxisBox& bounds() const { return bounds_; }
    std::size_t dim() const { return bounds_.dim(); }
    const std::vector<PolygonObstacle>& polygons() const { return polygons_; }
    const std::vector<BallObstacle>& balls() const { return balls_; }

    bool point_valid(const Point& p) const;
    /// Distance from a valid point to the boundary of the free space (bounds
    /// faces and obstacle boundaries); 0 for invalid points.
    double clearance(const Point& p) const;

    /// Default collision-checking resolution, 1e-3 of the bounds diagonal.
    double default_resolution() const { return 1e-3 * bounds_.diagonal(); }

private:
    AxisBox bounds_;
    std::vector<PolygonObstacle> polygons_;
    std::vector<BallObstacle> balls_;
};

/// Discretized straight-segment validity: every point at spacing <= resolution
/// along a->b (endpoints included) must be valid in the world. Obstacles whose
/// bounding volume the segment cannot reach are skipped without changing the
/// result.
bool segment_valid(const Point& a, const Point& b, const World& world, double resolution);

}  // namespace tamp
