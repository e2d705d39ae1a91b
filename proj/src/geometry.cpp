#include "tamp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tamp {

namespace {

void check_dim(std::size_t dim) {
    if (dim < 1 || dim > Point::kMaxDim) {
        throw UsageError("point dimension must be in [1, " + std::to_string(Point::kMaxDim) +
                         "], got " + std::to_string(dim));
    }
}

void check_finite(std::span<const double> c) {
    for (double v : c) {
        if (!std::isfinite(v)) throw UsageError("point coordinates must be finite");
    }
}

double cross2(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// True if closed segments p1p2 and p3p4 share any point.
bool segments_touch(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
    const double d1 = cross2(p3, p4, p1);
    const double d2 = cross2(p3, p4, p2);
    const double d3 = cross2(p1, p2, p3);
    const double d4 = cross2(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    auto on_seg = [](const Point& a, const Point& b, const Point& p) {
        return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
               std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
    };
    return (d1 == 0 && on_seg(p3, p4, p1)) || (d2 == 0 && on_seg(p3, p4, p2)) ||
           (d3 == 0 && on_seg(p1, p2, p3)) || (d4 == 0 && on_seg(p1, p2, p4));
}

AxisBox polygon_bbox(const std::vector<Point>& v) {
    if (v.size() < 3) throw UsageError("polygon needs at least 3 vertices");
    double x0 = v[0][0], x1 = v[0][0], y0 = v[0][1], y1 = v[0][1];
    for (const auto& p : v) {
        if (p.dim() != 2) throw UsageError("polygon vertices must be 2-dimensional");
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    return AxisBox(Point{x0, y0}, Point{x1, y1});
}

double signed_area(const std::vector<Point>& v) {
    double a = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

}  // namespace

Point::Point(std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) { check_dim(dim); }

Point::Point(std::initializer_list<double> coords) : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) : dim_(static_cast<std::uint8_t>(coords.size())) {
    check_dim(coords.size());
    check_finite(coords);
    std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::operator+(const Point& o) const {
    if (dim_ != o.dim_) throw UsageError("dimension mismatch");
    Point r(Unchecked{}, dim_);
    for (std::size_t i = 0; i < dim_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

Point Point::operator-(const Point& o) const {
    if (dim_ != o.dim_) throw UsageError("dimension mismatch");
    Point r(Unchecked{}, dim_);
    for (std::size_t i = 0; i < dim_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

Point Point::operator*(double s) const {
    Point r(Unchecked{}, dim_);
    for (std::size_t i = 0; i < dim_; ++i) r.c_[i] = c_[i] * s;
    return r;
}

double Point::dot(const Point& o) const {
    if (dim_ != o.dim_) throw UsageError("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
}

double Point::norm() const { return std::sqrt(dot(*this)); }

Point Point::with(std::size_t i, double value) const {
    if (i >= dim_) throw UsageError("coordinate index out of range");
    if (!std::isfinite(value)) throw UsageError("point coordinates must be finite");
    Point r = *this;
    r.c_[i] = value;
    return r;
}

bool Point::operator==(const Point& o) const {
    return dim_ == o.dim_ && std::equal(c_.begin(), c_.begin() + dim_, o.c_.begin());
}

std::string Point::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < dim_; ++i) os << (i ? ", " : "") << c_[i];
    os << ')';
    return os.str();
}

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw UsageError("distance: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
    }
    return std::sqrt(squared_distance_unchecked(a, b));
}

AxisBox::AxisBox(Point lo, Point hi) : lo_(lo), hi_(hi) {
    if (lo.dim() != hi.dim()) throw UsageError("AxisBox: lo/hi dimension mismatch");
    for (std::size_t i = 0; i < lo.dim(); ++i) {
        if (lo[i] > hi[i]) throw UsageError("AxisBox: lo must not exceed hi");
    }
}

double AxisBox::measure() const {
    double m = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) m *= hi_[i] - lo_[i];
    return m;
}

bool AxisBox::contains(const Point& p, double tol) const {
    if (p.dim() != dim()) throw UsageError("AxisBox::contains: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) {
        if (p[i] < lo_[i] - tol || p[i] > hi_[i] + tol) return false;
    }
    return true;
}

double AxisBox::distance_to_faces(const Point& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dim(); ++i) d = std::min({d, p[i] - lo_[i], hi_[i] - p[i]});
    return std::max(d, 0.0);
}

Point sample_uniform_box(const AxisBox& box, Rng& rng) {
    std::array<double, Point::kMaxDim> c{};
    for (std::size_t i = 0; i < box.dim(); ++i) {
        if (!(box.hi()[i] > box.lo()[i])) throw UsageError("sample_uniform_box: box has zero measure");
        c[i] = rng.uniform(box.lo()[i], box.hi()[i]);
    }
    return Point(std::span<const double>(c.data(), box.dim()));
}

PolygonObstacle::PolygonObstacle(std::vector<Point> vertices)
    : vertices_(std::move(vertices)), bbox_(polygon_bbox(vertices_)) {
    const std::size_t n = vertices_.size();
    const double area = signed_area(vertices_);
    if (std::abs(area) <= 0.0) throw UsageError("polygon is degenerate (zero area)");
    if (area < 0) std::reverse(vertices_.begin(), vertices_.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_touch(vertices_[i], vertices_[(i + 1) % n], vertices_[j], vertices_[(j + 1) % n])) {
                throw UsageError("polygon is not simple: edges " + std::to_string(i) + " and " +
                                 std::to_string(j) + " intersect");
            }
        }
    }
}

double PolygonObstacle::area() const { return signed_area(vertices_); }

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

double distance_to_polygon_boundary(const Point& p, const PolygonObstacle& poly) {
    const auto& v = poly.vertices();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        d = std::min(d, point_segment_distance(p, v[i], v[(i + 1) % n]));
    }
    return d;
}

PolygonSide point_in_polygon(const Point& p, const PolygonObstacle& poly) {
    if (p.dim() != 2) throw UsageError("point_in_polygon: point must be 2-dimensional");
    const auto& bb = poly.bounding_box();
    if (!bb.contains(p, kBoundaryTolerance)) return PolygonSide::outside;
    const auto& v = poly.vertices();
    bool inside = false;
    for (std::size_t i = 0, n = v.size(), j = n - 1; i < n; j = i++) {
        const Point& a = v[j];
        const Point& b = v[i];
        if (point_segment_distance(p, a, b) <= kBoundaryTolerance) return PolygonSide::boundary;
        if ((b[1] > p[1]) != (a[1] > p[1])) {
            const double x = b[0] + (p[1] - b[1]) * (a[0] - b[0]) / (a[1] - b[1]);
            if (p[0] < x) inside = !inside;
        }
    }
    return inside ? PolygonSide::inside : PolygonSide::outside;
}

World& World::add(PolygonObstacle poly) {
    if (dim() != 2) throw UsageError("polygon obstacles require a 2-dimensional world");
    polygons_.push_back(std::move(poly));
    return *this;
}

World& World::add(BallObstacle ball) {
    if (ball.center.dim() != dim()) throw UsageError("ball obstacle dimension mismatch");
    if (!(ball.radius > 0.0)) throw UsageError("ball obstacle radius must be positive");
    balls_.push_back(std::move(ball));
    return *this;
}

namespace {

bool ball_blocks(const BallObstacle& b, const Point& p) {
    return std::sqrt(squared_distance_unchecked(p, b.center)) < b.radius - kBoundaryTolerance;
}

}  // namespace

bool World::point_valid(const Point& p) const {
    if (!bounds_.contains(p)) return false;
    for (const auto& b : balls_) {
        if (ball_blocks(b, p)) return false;
    }
    for (const auto& poly : polygons_) {
        if (point_in_polygon(p, poly) == PolygonSide::inside) return false;
    }
    return true;
}

double World::clearance(const Point& p) const {
    if (!point_valid(p)) return 0.0;
    double d = bounds_.distance_to_faces(p);
    for (const auto& b : balls_) d = std::min(d, distance(p, b.center) - b.radius);
    for (const auto& poly : polygons_) d = std::min(d, distance_to_polygon_boundary(p, poly));
    return std::max(d, 0.0);
}

bool segment_valid(const Point& a, const Point& b, const World& world, double resolution) {
    if (!(resolution > 0.0)) throw UsageError("segment_valid: resolution must be positive");
    if (a.dim() != world.dim() || b.dim() != world.dim()) throw UsageError("segment_valid: dimension mismatch");
    if (!world.bounds().contains(a) || !world.bounds().contains(b)) return false;

    const double len = distance(a, b);
    const auto steps = static_cast<std::size_t>(std::ceil(len / resolution));
    const Point ab = b - a;
    auto sample = [&](std::size_t i) {
        return steps == 0 ? a : (i == steps ? b : a + ab * (static_cast<double>(i) / static_cast<double>(steps)));
    };

    for (const auto& ball : world.balls()) {
        if (point_segment_distance(ball.center, a, b) >= ball.radius - kBoundaryTolerance) continue;
        for (std::size_t i = 0; i <= steps; ++i) {
            if (ball_blocks(ball, sample(i))) return false;
        }
    }
    if (world.polygons().empty()) return true;
    const double sx0 = std::min(a[0], b[0]), sx1 = std::max(a[0], b[0]);
    const double sy0 = std::min(a[1], b[1]), sy1 = std::max(a[1], b[1]);
    for (const auto& poly : world.polygons()) {
        const auto& bb = poly.bounding_box();
        if (sx1 < bb.lo()[0] || sx0 > bb.hi()[0] || sy1 < bb.lo()[1] || sy0 > bb.hi()[1]) continue;
        for (std::size_t i = 0; i <= steps; ++i) {
            if (point_in_polygon(sample(i), poly) == PolygonSide::inside) return false;
        }
    }
    return true;
}

}  // namespace tamp
