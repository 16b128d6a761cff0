#include "facetint/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facetint {

rational cross3(const point& o, const point& a, const point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orient3(const point& o, const point& a, const point& b) {
    rational c = cross3(o, a, b);
    if (c > 0) return 1;
    if (c < 0) return -1;
    return 0;
}

bool on_segment(const point& a, const point& b, const point& p) {
    if (orient3(a, b, p) != 0) return false;
    if (p.x < std::min(a.x, b.x) || p.x > std::max(a.x, b.x)) return false;
    if (p.y < std::min(a.y, b.y) || p.y > std::max(a.y, b.y)) return false;
    return true;
}

rational param_on(const point& a, const point& b, const point& p) {
    point d = b - a;
    if (d.x != 0) return (p.x - a.x) / d.x;
    if (d.y != 0) return (p.y - a.y) / d.y;
    throw std::invalid_argument("param_on: degenerate segment");
}

seg_hit seg_intersect(const point& a, const point& b, const point& c, const point& d) {
    point r = b - a;
    point s = d - c;
    rational denom = r.x * s.y - r.y * s.x;
    rational qpxr = (c.x - a.x) * r.y - (c.y - a.y) * r.x;

    if (denom == 0) {
        if (qpxr != 0) return {};  // parallel, disjoint lines
        // collinear: overlap interval in parameters along [a, b]
        if (r.x == 0 && r.y == 0) {
            // degenerate first segment
            if (on_segment(c, d, a)) return {hit_kind::at_point, a, {}};
            return {};
        }
        rational t0 = param_on(a, b, c);
        rational t1 = param_on(a, b, d);
        if (t0 > t1) std::swap(t0, t1);
        rational lo = std::max(t0, rational(0));
        rational hi = std::min(t1, rational(1));
        if (lo > hi) return {};
        point p = a + r * lo;
        if (lo == hi) return {hit_kind::at_point, p, {}};
        return {hit_kind::overlap, p, a + r * hi};
    }

    // solve a + t r = c + u s
    rational t = ((c.x - a.x) * s.y - (c.y - a.y) * s.x) / denom;
    rational u = qpxr / denom;
    if (t < 0 || t > 1 || u < 0 || u > 1) return {};
    return {hit_kind::at_point, a + r * t, {}};
}

namespace {

// 0 for directions in the half-open upper half (angle in [0, pi)), 1 otherwise
int half_of(const point& v) {
    if (v.y > 0) return 0;
    if (v.y < 0) return 1;
    return v.x > 0 ? 0 : 1;
}

}  // namespace

bool ccw_dir_less(const point& u, const point& v) {
    int hu = half_of(u), hv = half_of(v);
    if (hu != hv) return hu < hv;
    rational c = u.x * v.y - u.y * v.x;
    return c > 0;
}

rational signed_area2(const std::vector<point>& poly) {
    rational s = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const point& p = poly[i];
        const point& q = poly[(i + 1) % n];
        s += p.x * q.y - p.y * q.x;
    }
    return s;
}

std::vector<point> unit_circle_points(int n) {
    if (n <= 0) throw std::invalid_argument("unit_circle_points: n must be positive");
    // tan half-angle: t = tan(pi k / n) rational -> ((1-t^2)/(1+t^2), 2t/(1+t^2))
    // lands exactly on the circle; the angle is approximate, which is fine.
    std::vector<point> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (2 * k == n) {
            pts.push_back({-1, 0});
            continue;
        }
        double theta_half = M_PI * k / n;
        rational t = rational_near(std::tan(theta_half), 1000000L);
        rational t2 = t * t;
        rational den = 1 + t2;
        pts.push_back({(1 - t2) / den, (2 * t) / den});
    }
    // sanity: distinct and strictly counterclockwise from (1, 0)
    for (int k = 0; k + 1 < n; ++k) {
        if (pts[k] == pts[k + 1])
            throw std::runtime_error("unit_circle_points: approximation collision");
    }
    return pts;
}

rational rational_near(double v, long max_den) {
    if (!std::isfinite(v)) throw std::invalid_argument("rational_near: non-finite value");
    bool neg = v < 0;
    double x = neg ? -v : v;
    // continued fraction convergents p/q with q <= max_den
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        // a gigantic term means the tail is negligible; clamp it so the first
        // iteration still records the magnitude instead of falling back to 1
        bool huge = fl > 9e17;
        long a = huge ? (long)9e17 : static_cast<long>(fl);
        if (q1 != 0 && (max_den - q0) / q1 < a) break;  // next q would exceed max_den
        if (p1 != 0 && a > (4600000000000000000L - p0) / p1) break;  // p would overflow
        long p2 = a * p1 + p0;
        long q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (huge || rem < 1e-12) break;
        frac = 1.0 / rem;
    }
    rational r(p1, q1 == 0 ? 1 : q1);
    return neg ? -r : r;
}

}  // namespace facetint
