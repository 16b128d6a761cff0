#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace facetint {

// Exact rational arithmetic everywhere; no geometric predicate ever sees a double.
using rational = boost::multiprecision::cpp_rational;

struct point {
    rational x;
    rational y;

    bool operator==(const point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const point& o) const { return !(*this == o); }
    bool operator<(const point& o) const { return x < o.x || (x == o.x && y < o.y); }

    point operator+(const point& o) const { return {x + o.x, y + o.y}; }
    point operator-(const point& o) const { return {x - o.x, y - o.y}; }
    point operator*(const rational& s) const { return {x * s, y * s}; }
};

// z-component of (a - o) x (b - o)
rational cross3(const point& o, const point& a, const point& b);

// -1, 0, +1: clockwise, collinear, counterclockwise (mathematical y-up convention)
int orient3(const point& o, const point& a, const point& b);

// p lies on the closed segment [a, b] (collinear and within the bounding box)
bool on_segment(const point& a, const point& b, const point& p);

// scalar t with p = a + t (b - a); requires p collinear with a != b
rational param_on(const point& a, const point& b, const point& p);

enum class hit_kind { none, at_point, overlap };

struct seg_hit {
    hit_kind kind = hit_kind::none;
    point p;  // the single intersection point, or one end of the shared part
    point q;  // other end of the shared part when kind == overlap
};

// closed-segment intersection, exact
seg_hit seg_intersect(const point& a, const point& b, const point& c, const point& d);

// strict counterclockwise comparison of direction vectors, starting from the
// positive x axis; vectors must be nonzero. Equal directions compare false both ways.
bool ccw_dir_less(const point& u, const point& v);

// twice the signed area of the closed polygon (counterclockwise positive)
rational signed_area2(const std::vector<point>& poly);

// n distinct rational points exactly on the unit circle, in counterclockwise
// order starting near (1, 0), spaced approximately evenly
std::vector<point> unit_circle_points(int n);

// nearest rational with denominator <= max_den (continued fractions)
rational rational_near(double v, long max_den);

}  // namespace facetint
