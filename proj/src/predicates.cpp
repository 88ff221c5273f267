#include "losp/geom.hpp"

#include <array>
#include <cmath>

namespace losp {

namespace {

constexpr double kHalfUlp = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwBound = (3.0 + 16.0 * kHalfUlp) * kHalfUlp;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    double bv = x - a;
    double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_prod(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// Adds b to the nonoverlapping expansion e[0..n), zero components dropped.
int grow_expansion(const double* e, int n, double b, double* h) {
    double q = b;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        double x, y;
        two_sum(q, e[i], x, y);
        if (y != 0.0) h[k++] = y;
        q = x;
    }
    if (q != 0.0 || k == 0) h[k++] = q;
    return k;
}

int exact_orient(Point a, Point b, Point c) {
    double terms[12];
    two_prod(a.x, b.y, terms[0], terms[1]);
    two_prod(-a.y, b.x, terms[2], terms[3]);
    two_prod(b.x, c.y, terms[4], terms[5]);
    two_prod(-b.y, c.x, terms[6], terms[7]);
    two_prod(c.x, a.y, terms[8], terms[9]);
    two_prod(-c.y, a.x, terms[10], terms[11]);

    std::array<double, 16> buf1{}, buf2{};
    double* cur = buf1.data();
    double* nxt = buf2.data();
    int n = 0;
    for (double t : terms) {
        if (t == 0.0) continue;
        n = grow_expansion(cur, n, t, nxt);
        std::swap(cur, nxt);
    }
    if (n == 0) return 0;
    double top = cur[n - 1];
    return top > 0 ? 1 : (top < 0 ? -1 : 0);
}

}  // namespace

int orient_sign(Point a, Point b, Point c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return exact_orient(a, b, c);
    }
    if (det >= kCcwBound * detsum || -det >= kCcwBound * detsum) return det > 0 ? 1 : -1;
    return exact_orient(a, b, c);
}

Orientation orientation(Point a, Point b, Point c) {
    int s = orient_sign(a, b, c);
    return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::COLLINEAR);
}

}  // namespace losp
