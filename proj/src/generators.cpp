#include "losp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace losp {

namespace {

constexpr int kMaxAttempts = 20000;

double uni(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uni_int(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

Point rotate(Point p, double a) {
    double c = std::cos(a), s = std::sin(a);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Point polar(Point c, double ang, double r) { return c + r * Point{std::cos(ang), std::sin(ang)}; }

// Polygon if the vertices form a simple polygon with features >= 1.
std::optional<Polygon> admit(const std::vector<Point>& pts) {
    if (!simplicity_defect(pts).empty() || signed_area(pts) <= 0) return std::nullopt;
    try {
        Polygon q(pts);
        if (q.min_feature() < 1) return std::nullopt;
        return q;
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

bool annotation_ok(const Polygon& q, const SweepAnnotation& a) {
    try {
        Decomposition d(q, a);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

// Splits interior abscissae 1..k between the two chains (both non-empty).
void split_positions(std::mt19937_64& rng, int k, std::vector<int>& lower, std::vector<int>& upper) {
    do {
        lower.clear();
        upper.clear();
        for (int i = 1; i <= k; ++i) (uni(rng, 0, 1) < 0.5 ? lower : upper).push_back(i);
    } while (lower.empty() || upper.empty());
}

// Sorted angles in (lo, hi) with pairwise gaps of at least `gap`.
std::vector<double> spaced_angles(std::mt19937_64& rng, int count, double lo, double hi, double gap) {
    for (int tries = 0; tries < 200; ++tries) {
        std::vector<double> a;
        for (int i = 0; i < count; ++i) a.push_back(uni(rng, lo, hi));
        std::sort(a.begin(), a.end());
        bool ok = a.front() - lo >= gap / 2 && hi - a.back() >= gap / 2;
        for (std::size_t i = 1; ok && i < a.size(); ++i) ok = a[i] - a[i - 1] >= gap;
        if (ok) return a;
    }
    return {};
}

}  // namespace

Generated random_monotone(std::uint64_t seed, int n, double max_area) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        int nv = n > 0 ? n : uni_int(rng, 6, 30);
        if (nv < 4) throw std::invalid_argument("monotone polygons need at least 4 vertices");
        int k = nv - 2;
        double h = uni(rng, 1.5, 6);
        std::vector<int> lo, up;
        split_positions(rng, k, lo, up);
        std::vector<Point> pts{{0, 0}};
        for (int x : lo) {
            double y = uni(rng, 0, 1) < 0.25 ? uni(rng, -0.5, h / 2) : -uni(rng, 0.5, h);
            pts.push_back({static_cast<double>(x), y});
        }
        pts.push_back({static_cast<double>(k + 1), uni(rng, -1, 1)});
        for (auto it = up.rbegin(); it != up.rend(); ++it) {
            double y = uni(rng, 0, 1) < 0.25 ? uni(rng, -h / 2, 0.5) : uni(rng, 0.5, h);
            pts.push_back({static_cast<double>(*it), y});
        }
        double ang = uni(rng, 0, 2 * M_PI);
        for (auto& p : pts) p = rotate(p, ang);
        auto q = admit(pts);
        if (!q || q->area() > max_area) continue;
        SweepAnnotation a = SweepAnnotation::monotone(rotate({1, 0}, ang));
        if (!annotation_ok(*q, a)) continue;
        return {"monotone", seed, *q, a};
    }
    throw std::runtime_error("monotone generator gave up");
}

Generated random_scallop(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        int nv = n > 0 ? n : uni_int(rng, 6, 30);
        if (nv < 4) throw std::invalid_argument("scallop polygons need at least 4 vertices");
        double r0 = uni(rng, 3, 8), width = uni(rng, 3, 6);
        double span = uni(rng, M_PI / 3, 0.9 * M_PI);
        double start = uni(rng, 0, 2 * M_PI);
        int k_in = uni_int(rng, 1, nv - 3), k_out = nv - 2 - k_in;
        auto in = spaced_angles(rng, k_in, 0, span, 1.05 / r0);
        auto out = spaced_angles(rng, k_out, 0, span, 1.05 / (r0 + width));
        if (in.empty() || out.empty()) continue;
        double mid = r0 + width / 2;
        Point c{0, 0};
        // counter-clockwise: inner chain by decreasing angle, outer by increasing
        std::vector<Point> pts{polar(c, start + span, mid + uni(rng, -0.3, 0.3))};
        for (auto it = in.rbegin(); it != in.rend(); ++it)
            pts.push_back(polar(c, start + *it, r0 + uni(rng, 0, 0.45) * width));
        pts.push_back(polar(c, start, mid + uni(rng, -0.3, 0.3)));
        for (double a : out) pts.push_back(polar(c, start + a, r0 + uni(rng, 0.55, 1) * width));
        auto q = admit(pts);
        if (!q) continue;
        SweepAnnotation s = SweepAnnotation::scallop(c);
        if (!annotation_ok(*q, s)) continue;
        return {"scallop", seed, *q, s};
    }
    throw std::runtime_error("scallop generator gave up");
}

Generated random_sweepable(std::uint64_t seed, int pieces) {
    if (pieces != 2 && pieces != 3) throw std::invalid_argument("sweepable generator supports 2 or 3 pieces");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        // monotone piece over 0 <= x < L with the lower chain near y = 0 and
        // the upper chain near y = 4; scallop center (L, -depth) below.
        int m = uni_int(rng, 2, 7);
        double len = m + 1;
        double depth = uni(rng, 1.5, 4);
        Point c{len, -depth};
        auto lo_y = [&] { return uni(rng, 0, 1.5); };
        auto hi_y = [&] { return uni(rng, 3, 5.5); };
        std::vector<int> mlo, mup;
        split_positions(rng, m, mlo, mup);

        double span = pieces == 2 ? uni(rng, M_PI / 3, 0.8 * M_PI) : uni(rng, M_PI / 4, 0.6 * M_PI);
        double end = M_PI / 2 - span;
        double r_in = depth, r_out = depth + 3;
        int k_in = uni_int(rng, 1, 4), k_out = uni_int(rng, 1, 4);
        auto ain = spaced_angles(rng, k_in, end, M_PI / 2, 1.1 / r_in);
        auto aout = spaced_angles(rng, k_out, end, M_PI / 2, 1.1 / r_out);
        if (ain.empty() || aout.empty()) continue;

        std::vector<Point> lower, upper;  // in sweep order
        for (int x : mlo) lower.push_back({static_cast<double>(x), lo_y()});
        for (int x : mup) upper.push_back({static_cast<double>(x), hi_y()});
        for (auto it = ain.rbegin(); it != ain.rend(); ++it) lower.push_back(polar(c, *it, r_in + lo_y()));
        for (auto it = aout.rbegin(); it != aout.rend(); ++it) upper.push_back(polar(c, *it, r_in + hi_y()));

        Point last;
        Point u = {std::cos(end), std::sin(end)};
        Point axis3 = rot_cw(u);
        if (pieces == 2) {
            last = polar(c, end, r_in + uni(rng, 2, 2.5));
        } else {
            int m3 = uni_int(rng, 2, 6);
            std::vector<int> l3, u3;
            split_positions(rng, m3, l3, u3);
            auto at = [&](double s, double t) { return c + s * axis3 + t * u; };
            for (int s : l3) lower.push_back(at(s, r_in + lo_y()));
            for (int s : u3) upper.push_back(at(s, r_in + hi_y()));
            last = at(m3 + 1, r_in + uni(rng, 2, 2.5));
        }
        std::vector<Point> pts{{0, uni(rng, 1.5, 3)}};
        pts.insert(pts.end(), lower.begin(), lower.end());
        pts.push_back(last);
        pts.insert(pts.end(), upper.rbegin(), upper.rend());

        double ang = uni(rng, 0, 2 * M_PI);
        for (auto& p : pts) p = rotate(p, ang);
        auto q = admit(pts);
        if (!q) continue;
        PieceAnnotation p1{SweepKind::MONOTONE, rotate({1, 0}, ang), {0, 0}, true, -1, -1};
        PieceAnnotation p2{SweepKind::SCALLOP, {1, 0}, rotate(c, ang), true, -1, -1};
        std::vector<PieceAnnotation> ps{p1, p2};
        if (pieces == 3) ps.push_back({SweepKind::MONOTONE, rotate(axis3, ang), {0, 0}, true, -1, -1});
        SweepAnnotation a = SweepAnnotation::sweepable(ps);
        if (!annotation_ok(*q, a)) continue;
        return {"sweepable", seed, *q, a};
    }
    throw std::runtime_error("sweepable generator gave up");
}

Generated generate(const std::string& family, std::uint64_t seed, int n) {
    if (family == "monotone") return random_monotone(seed, n);
    if (family == "scallop") return random_scallop(seed, n);
    if (family == "sweepable") return random_sweepable(seed, n > 0 ? n : 2);
    throw std::invalid_argument("unknown polygon family: " + family);
}

Point random_interior_point(const Polygon& q, std::mt19937_64& rng) {
    for (;;) {
        Point p{uni(rng, q.min_x(), q.max_x()), uni(rng, q.min_y(), q.max_y())};
        if (point_in_polygon(q, p) == Location::INTERIOR) return p;
    }
}

std::vector<Point> random_starts(const Polygon& q, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) out.push_back(random_interior_point(q, rng));
    return out;
}

}  // namespace losp
