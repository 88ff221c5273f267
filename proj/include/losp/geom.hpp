#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace losp {

inline constexpr double kGeomEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(b - a); }
inline Point unit(Point a) {
    double n = norm(a);
    return n > 0 ? Point{a.x / n, a.y / n} : Point{0, 0};
}
// counter-clockwise and clockwise quarter turns
inline Point rot_ccw(Point a) { return {-a.y, a.x}; }
inline Point rot_cw(Point a) { return {a.y, -a.x}; }
inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

struct Segment {
    Point a;
    Point b;
};

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Orientation { CW = -1, COLLINEAR = 0, CCW = 1 };

// Exact sign of the 2x2 orientation determinant (adaptive filter, exact fallback).
int orient_sign(Point a, Point b, Point c);
Orientation orientation(Point a, Point b, Point c);

// p on the closed segment [a,b], exact.
bool on_segment(Point p, Point a, Point b);
// p strictly between a and b on the segment, exact.
bool in_segment_interior(Point p, Point a, Point b);

enum class Location { INTERIOR, BOUNDARY, EXTERIOR };

class Polygon {
public:
    Polygon() = default;
    // Validates: >= 3 vertices, no duplicates, simple, counter-clockwise.
    explicit Polygon(std::vector<Point> vertices);

    std::size_t size() const { return v_.size(); }
    const std::vector<Point>& vertices() const { return v_; }
    Point operator[](std::size_t i) const { return v_[i]; }
    Point vertex(std::size_t i) const { return v_[i % v_.size()]; }
    Segment edge(std::size_t i) const { return {v_[i], v_[(i + 1) % v_.size()]}; }
    std::size_t next(std::size_t i) const { return (i + 1) % v_.size(); }
    std::size_t prev(std::size_t i) const { return (i + v_.size() - 1) % v_.size(); }
    bool is_reflex(std::size_t i) const;

    double area() const { return area_; }
    double diameter() const { return diameter_; }
    double min_feature() const { return min_feature_; }
    double min_x() const { return lo_.x; }
    double min_y() const { return lo_.y; }
    double max_x() const { return hi_.x; }
    double max_y() const { return hi_.y; }

private:
    std::vector<Point> v_;
    double area_ = 0;
    double diameter_ = 0;
    double min_feature_ = 0;
    Point lo_, hi_;
};

// Signed shoelace area.
double signed_area(const std::vector<Point>& pts);
// Empty string when simple, otherwise a description of the first defect.
std::string simplicity_defect(const std::vector<Point>& pts);

Location point_in_polygon(const Polygon& q, Point p);
inline bool contains(const Polygon& q, Point p) { return point_in_polygon(q, p) != Location::EXTERIOR; }

// Closed-region containment of segment ab. Grazing vertices and running
// along edges count as inside. Throws GeometryError when an endpoint is outside.
bool segment_in_polygon(const Polygon& q, Point a, Point b);
// Same test, returning false instead of throwing.
bool segment_inside(const Polygon& q, Point a, Point b);
inline bool visible(const Polygon& q, Point a, Point b) { return segment_inside(q, a, b); }

struct BoundaryHit {
    Point point;
    std::size_t edge = 0;
    double t = 0;  // distance along the unit direction
};

// Nearest boundary contact strictly ahead of origin (distance > kGeomEps).
// Edges collinear with the ray that contain the origin are skipped.
// Throws GeometryError for a zero direction or when the ray leaves the
// polygon immediately from a boundary origin.
BoundaryHit first_boundary_hit(const Polygon& q, Point origin, Point dir);
std::optional<BoundaryHit> try_first_boundary_hit(const Polygon& q, Point origin, Point dir);

// Region of q seen from p, as a ring sorted by angle around p. Rays are cast
// at every vertex and just either side of it; p is included when it lies on
// the boundary.
std::vector<Point> visibility_region(const Polygon& q, Point p);

// Farthest point along from->to such that the prefix stays in q.
Point clip_segment(const Polygon& q, Point from, Point to);

// p itself when segment from->p is inside; otherwise the nearest point
// toward `from` that is (rounding repair first, then clipping).
Point pull_inside(const Polygon& q, Point from, Point p);

// Closest point on segment ab to p.
Point closest_on_segment(Point p, Point a, Point b);
double dist_point_segment(Point p, Point a, Point b);
// Intersection of lines (p + s d) and (q + t e); nullopt when parallel.
std::optional<Point> line_intersection(Point p, Point d, Point q, Point e);
// Intersection point of closed segments when they cross or touch at a single point.
std::optional<Point> segment_intersection(Point a, Point b, Point c, Point d);
bool segments_intersect(Point a, Point b, Point c, Point d);

// Boundary edges containing p (exact).
std::vector<std::size_t> edges_containing(const Polygon& q, Point p);

}  // namespace losp
