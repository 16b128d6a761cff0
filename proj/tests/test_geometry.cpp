#include "facetint/geometry.hpp"

#include <algorithm>

#include "doctest.h"

using namespace facetint;

static point pt(long x, long y) { return {rational(x), rational(y)}; }

TEST_CASE("orientation predicate") {
    CHECK(orient3(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orient3(pt(0, 0), pt(0, 1), pt(1, 0)) == -1);
    CHECK(orient3(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
    CHECK(orient3(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
    point tiny{rational(1, 1000000007), rational(1, 998244353)};
    CHECK(orient3(pt(0, 0), pt(1, 0), tiny) == 1);
}

TEST_CASE("on_segment and param_on") {
    CHECK(on_segment(pt(0, 0), pt(4, 2), pt(2, 1)));
    CHECK(on_segment(pt(0, 0), pt(4, 2), pt(0, 0)));
    CHECK(on_segment(pt(0, 0), pt(4, 2), pt(4, 2)));
    CHECK(!on_segment(pt(0, 0), pt(4, 2), pt(6, 3)));
    CHECK(!on_segment(pt(0, 0), pt(4, 2), pt(2, 2)));
    CHECK(param_on(pt(0, 0), pt(4, 2), pt(2, 1)) == rational(1, 2));
    CHECK(param_on(pt(0, 0), pt(0, 4), pt(0, 3)) == rational(3, 4));
}

TEST_CASE("segment intersection: transversal") {
    auto h = seg_intersect(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0));
    REQUIRE(h.kind == hit_kind::at_point);
    CHECK(h.p == pt(1, 1));

    h = seg_intersect(pt(0, 0), pt(1, 1), pt(5, 0), pt(5, 9));
    CHECK(h.kind == hit_kind::none);
}

TEST_CASE("segment intersection: touches") {
    // shared endpoint
    auto h = seg_intersect(pt(0, 0), pt(2, 0), pt(2, 0), pt(3, 5));
    REQUIRE(h.kind == hit_kind::at_point);
    CHECK(h.p == pt(2, 0));
    // T junction: endpoint of one in the interior of the other
    h = seg_intersect(pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 3));
    REQUIRE(h.kind == hit_kind::at_point);
    CHECK(h.p == pt(2, 0));
    // near miss
    h = seg_intersect(pt(0, 0), pt(4, 0), pt(2, 1), pt(2, 3));
    CHECK(h.kind == hit_kind::none);
}

TEST_CASE("segment intersection: collinear cases") {
    // overlap in a sub-segment
    auto h = seg_intersect(pt(0, 0), pt(4, 0), pt(2, 0), pt(6, 0));
    REQUIRE(h.kind == hit_kind::overlap);
    point lo = h.p < h.q ? h.p : h.q;
    point hi = h.p < h.q ? h.q : h.p;
    CHECK(lo == pt(2, 0));
    CHECK(hi == pt(4, 0));
    // collinear, sharing exactly one endpoint
    h = seg_intersect(pt(0, 0), pt(2, 0), pt(2, 0), pt(5, 0));
    REQUIRE(h.kind == hit_kind::at_point);
    CHECK(h.p == pt(2, 0));
    // collinear, disjoint
    h = seg_intersect(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0));
    CHECK(h.kind == hit_kind::none);
    // parallel, distinct lines
    h = seg_intersect(pt(0, 0), pt(4, 0), pt(0, 1), pt(4, 1));
    CHECK(h.kind == hit_kind::none);
}

TEST_CASE("counterclockwise direction order") {
    std::vector<point> dirs = {pt(-1, -1), pt(0, 1), pt(1, -1), pt(1, 0),
                               pt(-1, 0),  pt(1, 1), pt(0, -1), pt(-1, 1)};
    std::sort(dirs.begin(), dirs.end(), ccw_dir_less);
    std::vector<point> want = {pt(1, 0),  pt(1, 1),   pt(0, 1),  pt(-1, 1),
                               pt(-1, 0), pt(-1, -1), pt(0, -1), pt(1, -1)};
    CHECK(dirs == want);
    // same direction, different magnitude: neither strictly precedes
    CHECK(!ccw_dir_less(pt(1, 1), pt(3, 3)));
    CHECK(!ccw_dir_less(pt(3, 3), pt(1, 1)));
    CHECK(ccw_dir_less(pt(1, 1), pt(-3, -3)));
}

TEST_CASE("signed area") {
    std::vector<point> sq = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)};
    CHECK(signed_area2(sq) == rational(2));
    std::reverse(sq.begin(), sq.end());
    CHECK(signed_area2(sq) == rational(-2));
    std::vector<point> tri = {pt(0, 0), pt(4, 0), pt(0, 3)};
    CHECK(signed_area2(tri) == rational(12));
}

TEST_CASE("unit circle points") {
    for (int n : {1, 2, 3, 4, 5, 8, 13, 40}) {
        auto pts = unit_circle_points(n);
        REQUIRE((int)pts.size() == n);
        for (auto& p : pts) CHECK(p.x * p.x + p.y * p.y == rational(1));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(pts[i] != pts[j]);
        CHECK(pts[0] == pt(1, 0));
        if (n >= 3) CHECK(signed_area2(pts) > 0);  // counterclockwise polygon
    }
    CHECK(unit_circle_points(4)[2] == pt(-1, 0));
}

TEST_CASE("rational approximation") {
    CHECK(rational_near(0.5, 1000) == rational(1, 2));
    CHECK(rational_near(-0.25, 1000) == rational(-1, 4));
    CHECK(rational_near(0.0, 1000) == rational(0));
    rational third = rational_near(1.0 / 3.0, 100);
    CHECK(third == rational(1, 3));
    // denominator bound respected
    rational pi_ist = rational_near(3.14159265358979, 1000);
    CHECK(boost::multiprecision::denominator(pi_ist) <= 1000);
    double err = std::abs(static_cast<double>(pi_ist.convert_to<double>()) - 3.14159265358979);
    CHECK(err < 1e-5);
}
