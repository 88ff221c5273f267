#pragma once

// Exact visit counting for a pursuer polyline. A point is visited once per
// maximal run of consecutive segments through it; two consecutive segments
// only share a visit at their common endpoint.

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "losp/geom.hpp"
#include "oracle.hpp"

namespace oracle {

inline std::vector<losp::Point> dedupe(const std::vector<losp::Point>& pts) {
    std::vector<losp::Point> out;
    for (auto p : pts)
        if (out.empty() || out.back() != p) out.push_back(p);
    return out;
}

inline bool on_closed(const QPoint& p, const QPoint& a, const QPoint& b) { return on_seg(p, a, b); }

// Visits of point x by the polyline (already deduplicated).
inline int visits(const std::vector<QPoint>& v, const QPoint& x) {
    int count = 0;
    bool prev_in = false;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        bool in = on_closed(x, v[k], v[k + 1]);
        if (in) {
            bool continues = prev_in && x.x == v[k].x && x.y == v[k].y;
            if (!continues) ++count;
        }
        prev_in = in;
    }
    return count;
}

// Largest number of visits of any point of the polyline.
inline int max_visits(const std::vector<losp::Point>& raw) {
    auto pts = dedupe(raw);
    if (pts.size() < 2) return pts.empty() ? 0 : 1;
    std::vector<QPoint> v;
    for (auto p : pts) v.push_back(q(p));
    std::size_t m = pts.size() - 1;
    auto box_apart = [&](std::size_t i, std::size_t j) {
        auto lo = [](double a, double b) { return std::min(a, b); };
        auto hi = [](double a, double b) { return std::max(a, b); };
        const auto &a = pts[i], &b = pts[i + 1], &c = pts[j], &d = pts[j + 1];
        return hi(a.x, b.x) < lo(c.x, d.x) || hi(c.x, d.x) < lo(a.x, b.x) || hi(a.y, b.y) < lo(c.y, d.y) ||
               hi(c.y, d.y) < lo(a.y, b.y);
    };
    int best = 1;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (box_apart(i, j)) continue;
            const QPoint &a = v[i], &b = v[i + 1], &c = v[j], &d = v[j + 1];
            int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
            std::vector<QPoint> cand;
            if (o1 == 0 && o2 == 0) {
                // collinear: probe every polyline vertex on ab and midpoints between them
                QPoint dir{b.x - a.x, b.y - a.y};
                mpq_class dd = dir.x * dir.x + dir.y * dir.y;
                std::vector<mpq_class> ts;
                for (const auto& w : v)
                    if (on_closed(w, a, b)) ts.push_back(((w.x - a.x) * dir.x + (w.y - a.y) * dir.y) / dd);
                std::sort(ts.begin(), ts.end());
                ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
                for (std::size_t k = 0; k < ts.size(); ++k) {
                    cand.push_back({a.x + ts[k] * dir.x, a.y + ts[k] * dir.y});
                    if (k + 1 < ts.size()) {
                        mpq_class mid = (ts[k] + ts[k + 1]) / 2;
                        cand.push_back({a.x + mid * dir.x, a.y + mid * dir.y});
                    }
                }
            } else if (o1 * o2 <= 0 && o3 * o4 <= 0) {
                if (o1 == 0) cand.push_back(c);
                else if (o2 == 0) cand.push_back(d);
                else if (o3 == 0) cand.push_back(a);
                else if (o4 == 0) cand.push_back(b);
                else {
                    QPoint r{b.x - a.x, b.y - a.y}, s{d.x - c.x, d.y - c.y};
                    mpq_class den = r.x * s.y - r.y * s.x;
                    mpq_class t = ((c.x - a.x) * s.y - (c.y - a.y) * s.x) / den;
                    cand.push_back({a.x + t * r.x, a.y + t * r.y});
                }
            }
            for (const auto& x : cand) best = std::max(best, visits(v, x));
        }
    }
    return best;
}

}  // namespace oracle
