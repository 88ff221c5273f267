#include "losp/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace losp {

bool on_segment(Point p, Point a, Point b) {
    if (p.x < std::min(a.x, b.x) || p.x > std::max(a.x, b.x)) return false;
    if (p.y < std::min(a.y, b.y) || p.y > std::max(a.y, b.y)) return false;
    return orient_sign(a, b, p) == 0;
}

bool in_segment_interior(Point p, Point a, Point b) { return p != a && p != b && on_segment(p, a, b); }

bool segments_intersect(Point a, Point b, Point c, Point d) {
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

double signed_area(const std::vector<Point>& pts) {
    double s = 0;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
    return 0.5 * s;
}

std::string simplicity_defect(const std::vector<Point>& pts) {
    std::size_t n = pts.size();
    if (n < 3) return "fewer than 3 vertices";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pts[i] == pts[j]) return "duplicate vertex " + std::to_string(i) + "," + std::to_string(j);
    for (std::size_t i = 0; i < n; ++i) {
        Point a = pts[i], b = pts[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            Point c = pts[j], d = pts[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (segments_intersect(a, b, c, d))
                    return "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
                continue;
            }
            // adjacent edges share exactly one endpoint; reject folds
            Point shared = (j == i + 1) ? b : a;
            Point other_ab = (shared == b) ? a : b;
            Point other_cd = (shared == c) ? d : c;
            if (orient_sign(a, b, other_cd) == 0 && on_segment(other_cd, a, b))
                return "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
            if (orient_sign(c, d, other_ab) == 0 && on_segment(other_ab, c, d))
                return "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
            (void)shared;
        }
    }
    return {};
}

Polygon::Polygon(std::vector<Point> vertices) : v_(std::move(vertices)) {
    for (const Point& p : v_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("non-finite vertex");
    std::string defect = simplicity_defect(v_);
    if (!defect.empty()) throw GeometryError("polygon is not simple: " + defect);
    area_ = signed_area(v_);
    if (area_ <= 0) throw GeometryError("polygon must be counter-clockwise with positive area");
    lo_ = hi_ = v_[0];
    diameter_ = 0;
    min_feature_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v_.size(); ++i) {
        lo_.x = std::min(lo_.x, v_[i].x);
        lo_.y = std::min(lo_.y, v_[i].y);
        hi_.x = std::max(hi_.x, v_[i].x);
        hi_.y = std::max(hi_.y, v_[i].y);
        for (std::size_t j = i + 1; j < v_.size(); ++j) {
            double d = dist(v_[i], v_[j]);
            diameter_ = std::max(diameter_, d);
            min_feature_ = std::min(min_feature_, d);
        }
    }
}

bool Polygon::is_reflex(std::size_t i) const { return orient_sign(vertex(prev(i)), v_[i], vertex(next(i))) < 0; }

Location point_in_polygon(const Polygon& q, Point p) {
    const auto& v = q.vertices();
    std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        if (on_segment(p, a, b)) return Location::BOUNDARY;
        if ((a.y > p.y) != (b.y > p.y)) {
            int o = orient_sign(a, b, p);
            if (b.y > a.y ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside ? Location::INTERIOR : Location::EXTERIOR;
}

namespace {

// Direction v->t lies in the closed interior wedge at vertex v (prev u, next w).
bool in_wedge(Point u, Point v, Point w, Point t) {
    int turn = orient_sign(u, v, w);
    int c1 = orient_sign(v, w, t);
    int c2 = orient_sign(v, t, u);
    if (turn > 0) return c1 >= 0 && c2 >= 0;
    if (turn < 0) return c1 >= 0 || c2 >= 0;
    return c1 >= 0;
}

bool segment_inside_unchecked(const Polygon& q, Point a, Point b) {
    if (a == b) return true;
    const auto& v = q.vertices();
    std::size_t n = v.size();
    thread_local std::vector<int> side;
    side.resize(n);
    for (std::size_t i = 0; i < n; ++i) side[i] = orient_sign(a, b, v[i]);
    double lox = std::min(a.x, b.x), hix = std::max(a.x, b.x);
    double loy = std::min(a.y, b.y), hiy = std::max(a.y, b.y);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        if (side[i] * side[j] < 0) {
            Point u = v[i], w = v[j];
            int o3 = orient_sign(u, w, a), o4 = orient_sign(u, w, b);
            if (o3 * o4 < 0) return false;
            if (o3 == 0 && o4 < 0) return false;
            if (o4 == 0 && o3 < 0) return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (side[i] != 0) continue;
        Point p = v[i];
        if (p.x < lox || p.x > hix || p.y < loy || p.y > hiy) continue;
        Point u = v[(i + n - 1) % n], w = v[(i + 1) % n];
        if (p != b && !in_wedge(u, p, w, b)) return false;
        if (p != a && !in_wedge(u, p, w, a)) return false;
    }
    return true;
}

}  // namespace

bool segment_in_polygon(const Polygon& q, Point a, Point b) {
    if (point_in_polygon(q, a) == Location::EXTERIOR) throw GeometryError("segment endpoint outside polygon");
    if (point_in_polygon(q, b) == Location::EXTERIOR) throw GeometryError("segment endpoint outside polygon");
    return segment_inside_unchecked(q, a, b);
}

bool segment_inside(const Polygon& q, Point a, Point b) {
    if (point_in_polygon(q, a) == Location::EXTERIOR) return false;
    if (point_in_polygon(q, b) == Location::EXTERIOR) return false;
    return segment_inside_unchecked(q, a, b);
}

std::vector<std::size_t> edges_containing(const Polygon& q, Point p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment e = q.edge(i);
        if (on_segment(p, e.a, e.b)) out.push_back(i);
    }
    return out;
}

namespace {

// For a boundary origin, whether the ray direction enters the closed polygon.
bool ray_enters(const Polygon& q, Point p, Point dir) {
    Point t = p + dir;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == p) return in_wedge(q.vertex(q.prev(i)), p, q.vertex(q.next(i)), t);
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment e = q.edge(i);
        if (on_segment(p, e.a, e.b)) return orient_sign(e.a, e.b, t) >= 0;
    }
    return true;
}

std::optional<BoundaryHit> scan_hits(const Polygon& q, Point o, Point d) {
    std::optional<BoundaryHit> best;
    const double tie = 1e-12;
    for (std::size_t i = 0; i < q.size(); ++i) {
        Segment s = q.edge(i);
        Point e = s.b - s.a;
        double denom = cross(d, e);
        double elen = norm(e);
        double t = -1;
        Point hit;
        if (orient_sign(s.a, s.b, o) == 0 && std::abs(cross(d, e)) <= 1e-12 * elen) {
            if (on_segment(o, s.a, s.b)) continue;
            double ta = dot(s.a - o, d), tb = dot(s.b - o, d);
            if (ta > kGeomEps && (tb <= kGeomEps || ta <= tb)) {
                t = ta;
                hit = s.a;
            } else if (tb > kGeomEps) {
                t = tb;
                hit = s.b;
            } else {
                continue;
            }
        } else {
            if (denom == 0.0) continue;
            Point ao = s.a - o;
            double tt = cross(ao, e) / denom;
            double ss = cross(ao, d) / denom;
            if (ss < -tie || ss > 1 + tie || tt <= kGeomEps) continue;
            t = tt;
            if (ss <= tie) hit = s.a;
            else if (ss >= 1 - tie) hit = s.b;
            else hit = s.a + ss * e;
        }
        if (!best || t < best->t - tie * std::max(1.0, t)) best = BoundaryHit{hit, i, t};
    }
    return best;
}

// Float hit points can land a rounding step outside; back off along the ray.
void settle(const Polygon& q, Point o, Point d, BoundaryHit& h) {
    if (point_in_polygon(q, h.point) != Location::EXTERIOR) return;
    double step = std::max(1.0, h.t) * 1e-16;
    for (int i = 0; i < 80; ++i, step *= 2) {
        double t = h.t - step;
        if (t <= 0) break;
        Point p = o + t * d;
        if (point_in_polygon(q, p) != Location::EXTERIOR) {
            h.point = p;
            h.t = t;
            return;
        }
    }
}

}  // namespace

std::optional<BoundaryHit> try_first_boundary_hit(const Polygon& q, Point origin, Point dir) {
    double len = norm(dir);
    if (!(len > 0)) return std::nullopt;
    Point d = dir * (1.0 / len);
    if (point_in_polygon(q, origin) == Location::BOUNDARY && !ray_enters(q, origin, d)) return std::nullopt;
    auto hit = scan_hits(q, origin, d);
    if (hit) settle(q, origin, d, *hit);
    return hit;
}

BoundaryHit first_boundary_hit(const Polygon& q, Point origin, Point dir) {
    double len = norm(dir);
    if (!(len > 0)) throw GeometryError("zero direction");
    Point d = dir * (1.0 / len);
    Location loc = point_in_polygon(q, origin);
    if (loc == Location::BOUNDARY && !ray_enters(q, origin, d)) throw GeometryError("ray exits immediately");
    auto hit = scan_hits(q, origin, d);
    if (!hit) throw GeometryError("ray does not meet the boundary");
    settle(q, origin, d, *hit);
    return *hit;
}

std::vector<Point> visibility_region(const Polygon& q, Point p) {
    std::vector<std::pair<double, Point>> hits;
    for (std::size_t i = 0; i < q.size(); ++i) {
        Point v = q[i] - p;
        if (norm(v) <= kGeomEps) continue;
        double a = std::atan2(v.y, v.x);
        for (double da : {-1e-7, 0.0, 1e-7}) {
            Point d{std::cos(a + da), std::sin(a + da)};
            if (auto h = try_first_boundary_hit(q, p, d)) hits.push_back({a + da, h->point});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    bool on_boundary = point_in_polygon(q, p) == Location::BOUNDARY;
    std::size_t start = 0;
    if (on_boundary && !hits.empty()) {
        // the exterior sits in the widest angular gap; begin just after it
        double widest = -1;
        for (std::size_t i = 0; i < hits.size(); ++i) {
            double prev = i ? hits[i - 1].first : hits.back().first - 2 * M_PI;
            if (hits[i].first - prev > widest) widest = hits[i].first - prev, start = i;
        }
    }
    std::vector<Point> ring;
    if (on_boundary) ring.push_back(p);
    for (std::size_t k = 0; k < hits.size(); ++k) {
        Point h = hits[(start + k) % hits.size()].second;
        if (ring.empty() || dist(ring.back(), h) > kGeomEps) ring.push_back(h);
    }
    if (ring.size() > 1 && dist(ring.front(), ring.back()) <= kGeomEps) ring.pop_back();
    // drop points in the middle of straight runs
    for (bool changed = true; changed && ring.size() > 3;) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() > 3; ++i) {
            Point a = ring[(i + ring.size() - 1) % ring.size()], b = ring[i], c = ring[(i + 1) % ring.size()];
            if (std::abs(cross(b - a, c - b)) <= 1e-9 * norm(b - a) * norm(c - b) + 1e-12 && dot(b - a, c - b) > 0) {
                ring.erase(ring.begin() + i);
                changed = true;
            }
        }
    }
    return ring;
}

Point clip_segment(const Polygon& q, Point from, Point to) {
    if (!contains(q, from)) return from;
    if (segment_inside_unchecked(q, from, to) && contains(q, to)) return to;
    double lo = 0, hi = 1;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        Point m = lerp(from, to, mid);
        if (contains(q, m) && segment_inside_unchecked(q, from, m)) lo = mid;
        else hi = mid;
    }
    return lo == 0 ? from : lerp(from, to, lo);
}

Point pull_inside(const Polygon& q, Point from, Point p) {
    if (segment_inside(q, from, p)) return p;
    double len = dist(from, p);
    if (len == 0) return from;
    // p rounded just off a nearby edge: nudge it inward
    double scale = std::max({1.0, std::abs(p.x), std::abs(p.y)});
    for (std::size_t e = 0; e < q.size(); ++e) {
        Segment s = q.edge(e);
        if (dist_point_segment(p, s.a, s.b) > 1e-9 * scale) continue;
        Point n = rot_ccw(unit(s.b - s.a));
        double d = 1e-15 * scale;
        for (int i = 0; i < 24; ++i, d *= 2) {
            Point c = p + d * n;
            double l = dist(from, c);
            if (l > len) c = from + (len / l) * (c - from);
            if (segment_inside(q, from, c)) return c;
        }
    }
    double step = std::max(1.0, len) * 1e-16;
    for (int i = 0; i < 40; ++i, step *= 2) {
        if (step >= len) break;
        Point c = lerp(from, p, 1 - step / len);
        if (segment_inside(q, from, c)) return c;
    }
    return clip_segment(q, from, p);
}

Point closest_on_segment(Point p, Point a, Point b) {
    Point ab = b - a;
    double l2 = dot(ab, ab);
    if (l2 == 0) return a;
    double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
    return a + t * ab;
}

double dist_point_segment(Point p, Point a, Point b) { return dist(p, closest_on_segment(p, a, b)); }

std::optional<Point> line_intersection(Point p, Point d, Point q, Point e) {
    double den = cross(d, e);
    if (std::abs(den) <= 1e-300) return std::nullopt;
    double s = cross(q - p, e) / den;
    return p + s * d;
}

std::optional<Point> segment_intersection(Point a, Point b, Point c, Point d) {
    if (!segments_intersect(a, b, c, d)) return std::nullopt;
    if (on_segment(c, a, b)) return c;
    if (on_segment(d, a, b)) return d;
    if (on_segment(a, c, d)) return a;
    if (on_segment(b, c, d)) return b;
    Point r = b - a, s = d - c;
    double den = cross(r, s);
    if (den == 0) return std::nullopt;
    double t = cross(c - a, s) / den;
    return a + t * r;
}

}  // namespace losp
