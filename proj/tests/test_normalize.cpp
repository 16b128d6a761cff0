#include "facetint/normalize.hpp"

#include <set>

#include "doctest.h"
#include "facetint/facecolor.hpp"

using namespace facetint;

namespace {

point pt(long x, long y) { return {rational(x), rational(y)}; }

int count_crossings(const PlanarizedDrawing& d) {
    int n = 0;
    for (const planar_vertex& v : d.verts)
        if (v.kind == pv_kind::crossing) ++n;
    return n;
}

std::vector<surgery_op> ops_of(const NormalizeResult& r) {
    std::vector<surgery_op> out;
    for (const SurgeryStep& s : r.steps) out.push_back(s.op);
    return out;
}

// whenever the result is 3-colorable, pulling the coloring back must give a
// proper coloring of the original drawing
void check_transfer(const PlanarizedDrawing& d, const NormalizeResult& r) {
    std::optional<FaceColoring> c = color_faces_exact(r.drawing, 3);
    REQUIRE(c.has_value());
    FaceColoring back = transfer_coloring(r, *c);
    CHECK(check_coloring(d, back));
    CHECK(back.k == 3);
    CHECK((int)back.color.size() == d.face_count());
}

void check_normalized(const PlanarizedDrawing& d, const NormalizeResult& r) {
    CHECK(is_good_drawing(r.drawing).first);
    CHECK(r.drawing.underlying == d.underlying);
    CHECK(r.before.size() == r.steps.size());
    long prev = crossing_triples(d);
    for (const SurgeryStep& s : r.steps) {
        CHECK(s.triples_before == prev);
        CHECK(s.triples_after <= s.triples_before);
        prev = s.triples_after;
    }
    CHECK(prev == crossing_triples(r.drawing));
}

PlanarizedDrawing figure_eight() {
    Multigraph g;
    g.add_vertex(0);
    g.add_edge(0, 0, 0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}};
    p.curve = {{0, {pt(0, 0), pt(6, 3), pt(6, -3), pt(0, 3), pt(0, 0)}}};
    return ingest_polylines(p);
}

// a loop whose two lobes meet at a bend without crossing
PlanarizedDrawing tangent_eight() {
    Multigraph g;
    g.add_vertex(0);
    g.add_edge(0, 0, 0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}};
    p.curve = {{0,
                {pt(0, 0), pt(4, 0), pt(7, 3), pt(7, -3), pt(4, 0), pt(2, -1), pt(0, 0)}}};
    return ingest_polylines(p);
}

PlanarizedDrawing touching_bend() {
    Multigraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 0, 2);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(-4, 0)}, {1, pt(4, 0)}, {2, pt(-4, 4)}, {3, pt(4, 4)}};
    p.curve = {{0, {pt(-4, 0), pt(0, 2), pt(4, 0)}},
               {1, {pt(-4, 4), pt(0, 2), pt(4, 4)}},
               {2, {pt(-4, 0), pt(-4, 4)}}};
    return ingest_polylines(p);
}

// three pairwise independent edges through one point, pairwise transversal
PlanarizedDrawing three_through_one() {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 4, 5);
    g.add_edge(3, 0, 2);
    g.add_edge(4, 1, 3);
    g.add_edge(5, 0, 4);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(-4, 0)}, {1, pt(4, 0)},  {2, pt(-3, -3)},
                  {3, pt(3, 3)},  {4, pt(-3, 3)}, {5, pt(3, -3)}};
    p.curve = {{0, {pt(-4, 0), pt(4, 0)}},  {1, {pt(-3, -3), pt(3, 3)}},
               {2, {pt(-3, 3), pt(3, -3)}}, {3, {pt(-4, 0), pt(-3, -3)}},
               {4, {pt(4, 0), pt(3, 3)}},   {5, {pt(-4, 0), pt(-3, 3)}}};
    return ingest_polylines(p);
}

// two bent edges tangent at the common point, one transversal through it:
// only two of the three pairs genuinely cross
PlanarizedDrawing tangential_multi() {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 4, 5);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(-6, -2)}, {1, pt(6, -2)}, {2, pt(-6, 2)},
                  {3, pt(6, 2)},   {4, pt(0, -6)}, {5, pt(0, 6)}};
    p.curve = {{0, {pt(-6, -2), pt(0, 0), pt(6, -2)}},
               {1, {pt(-6, 2), pt(0, 0), pt(6, 2)}},
               {2, {pt(0, -6), pt(0, 6)}}};
    return ingest_polylines(p);
}

// triangle drawn with two of its sides crossing once
PlanarizedDrawing crossed_triangle() {
    Multigraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 0, 2);
    g.add_edge(2, 1, 2);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}, {1, pt(4, 2)}, {2, pt(2, 4)}};
    p.curve = {{0, {pt(0, 0), pt(4, 2)}},
               {1, {pt(0, 0), pt(3, 0), pt(2, 4)}},
               {2, {pt(4, 2), pt(2, 4)}}};
    return ingest_polylines(p);
}

// a square with one side dipping across the opposite side twice
PlanarizedDrawing crossed_square() {
    Multigraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 1, 2);
    g.add_edge(2, 2, 3);
    g.add_edge(3, 3, 0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}, {1, pt(6, 0)}, {2, pt(6, 6)}, {3, pt(0, 6)}};
    p.curve = {{0, {pt(0, 0), pt(6, 0)}},
               {1, {pt(6, 0), pt(6, 6)}},
               {2, {pt(6, 6), pt(4, -1), pt(2, -1), pt(0, 6)}},
               {3, {pt(0, 6), pt(0, 0)}}};
    return ingest_polylines(p);
}

// digon between 0 and 1 plus a loop at 0 sweeping across both digon arcs
PolylineDrawing digon_loop_polylines() {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 0, 1);
    g.add_edge(2, 0, 0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}, {1, pt(6, 0)}};
    p.curve = {{0, {pt(0, 0), pt(6, 0)}},
               {1, {pt(0, 0), pt(3, 2), pt(6, 0)}},
               {2, {pt(0, 0), pt(2, -1), pt(4, 3), pt(0, 0)}}};
    return p;
}

// digon plus a loop that encircles it, dipping inward across the upper arc
// twice, so the outer face is bounded by loop pieces alone
PlanarizedDrawing encircling_loop() {
    PolylineDrawing p = digon_loop_polylines();
    p.curve[2] = {pt(0, 0),  pt(-1, 9),  pt(3, 1),  pt(9, 9),
                  pt(9, -9), pt(-9, -9), pt(-9, 1), pt(0, 0)};
    return ingest_polylines(p);
}

}  // namespace

TEST_CASE("touching sites are pattern-based") {
    PlanarizedDrawing d = touching_bend();
    std::vector<int> ts = touching_sites(d);
    REQUIRE(ts.size() == 1);
    CHECK(d.verts[ts[0]].kind == pv_kind::crossing);

    PlanarizedDrawing f8 = figure_eight();
    CHECK(touching_sites(f8).empty());  // a proper self-intersection

    PlanarizedDrawing t8 = tangent_eight();
    CHECK(touching_sites(t8).size() == 1);  // reported as self_intersection by kind
    auto [good, viol] = is_good_drawing(t8);
    CHECK(!good);
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].kind == violation_kind::self_intersection);
}

TEST_CASE("remove_touching erases the site and merges two faces") {
    PlanarizedDrawing d = touching_bend();
    int site = touching_sites(d)[0];
    SurgeryOutcome oc = remove_touching(d, site);
    CHECK(count_crossings(oc.drawing) == 0);
    CHECK(oc.drawing.face_count() == d.face_count() - 1);
    CHECK(is_good_drawing(oc.drawing).first);
    CHECK(oc.drawing.underlying == d.underlying);
    CHECK(oc.step.op == surgery_op::remove_touching);
    CHECK(oc.step.triples_before == 1);
    CHECK(oc.step.triples_after == 0);
    REQUIRE((int)oc.step.face_map.size() == d.face_count());
    for (int f : oc.step.face_map) {
        CHECK(f >= 0);
        CHECK(f < oc.drawing.face_count());
    }
}

TEST_CASE("tangent figure-eight smooths to a simple closed curve") {
    PlanarizedDrawing d = tangent_eight();
    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::remove_touching});
    CHECK(count_crossings(r.drawing) == 0);
    CHECK(r.drawing.segs.size() == 1);
    CHECK(r.drawing.face_count() == 2);
    check_transfer(d, r);
}

TEST_CASE("figure-eight needs a reroute first") {
    PlanarizedDrawing d = figure_eight();
    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::reroute_self_intersection,
                                               surgery_op::remove_touching});
    CHECK(count_crossings(r.drawing) == 0);
    CHECK(r.drawing.segs.size() == 1);
    CHECK(r.drawing.face_count() == 2);
    check_transfer(d, r);
}

TEST_CASE("splitting a transversal triple point gives three plain crossings") {
    PlanarizedDrawing d = three_through_one();
    int site = 6;
    REQUIRE(d.rot[site].size() == 6);
    SurgeryOutcome oc = split_multicrossing(d, site);
    CHECK(count_crossings(oc.drawing) == 3);
    CHECK(crossing_triples(oc.drawing) == 3);
    CHECK(is_good_drawing(oc.drawing).first);
    CHECK(oc.drawing.underlying == d.underlying);

    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::split_multicrossing});
    CHECK(count_crossings(r.drawing) == 3);
}

TEST_CASE("splitting a partly tangential triple point drops the absent pair") {
    PlanarizedDrawing d = tangential_multi();
    REQUIRE(count_crossings(d) == 1);
    REQUIRE(crossing_triples(d) == 3);
    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::split_multicrossing});
    // the two bent curves only meet, they do not cross, so their pair yields
    // no crossing after the split
    CHECK(count_crossings(r.drawing) == 2);
    CHECK(crossing_triples(r.drawing) == 2);
}

TEST_CASE("adjacent crossing is swapped away") {
    PlanarizedDrawing d = crossed_triangle();
    REQUIRE(count_crossings(d) == 1);
    auto [good, viol] = is_good_drawing(d);
    REQUIRE(!good);
    REQUIRE(viol.size() == 1);
    REQUIRE(viol[0].kind == violation_kind::adjacent_crossing);

    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::uncross_adjacent,
                                               surgery_op::remove_touching});
    CHECK(count_crossings(r.drawing) == 0);
    check_transfer(d, r);
}

TEST_CASE("double crossing is swapped away") {
    PlanarizedDrawing d = crossed_square();
    REQUIRE(count_crossings(d) == 2);
    auto [good, viol] = is_good_drawing(d);
    REQUIRE(!good);
    REQUIRE(viol.size() == 1);
    REQUIRE(viol[0].kind == violation_kind::double_crossing);

    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) ==
          std::vector<surgery_op>{surgery_op::uncross_double, surgery_op::remove_touching,
                                  surgery_op::remove_touching});
    CHECK(count_crossings(r.drawing) == 0);
    check_transfer(d, r);
}

TEST_CASE("loop isolation redraws the loop as a plain lobe") {
    PlanarizedDrawing d = ingest_polylines(digon_loop_polylines());
    REQUIRE(count_crossings(d) == 2);
    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::isolate_loop});
    CHECK(count_crossings(r.drawing) == 0);
    CHECK(r.drawing.face_count() == 3);  // digon lens, lobe, outer
    CHECK(r.steps[0].transfer == SurgeryStep::transfer_kind::reorient);
    check_transfer(d, r);
}

TEST_CASE("loop isolation resolves an outer face bounded by the loop alone") {
    PlanarizedDrawing d = encircling_loop();
    REQUIRE(count_crossings(d) == 2);
    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) == std::vector<surgery_op>{surgery_op::isolate_loop});
    CHECK(count_crossings(r.drawing) == 0);
    CHECK(r.drawing.face_count() == 3);
    check_transfer(d, r);
}

TEST_CASE("loop isolation keeps a crossing that still has two passes") {
    Multigraph g;
    for (int i = 0; i < 5; ++i) g.add_vertex(i);
    g.add_edge(0, 1, 2);
    g.add_edge(1, 3, 4);
    g.add_edge(2, 0, 0);
    g.add_edge(3, 0, 1);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, -5)}, {1, pt(-6, 0)}, {2, pt(6, 0)}, {3, pt(0, 6)}, {4, pt(0, -3)}};
    p.curve = {{0, {pt(-6, 0), pt(6, 0)}},
               {1, {pt(0, 6), pt(0, -3)}},
               {2, {pt(0, -5), pt(-4, 1), pt(-1, 2), pt(1, -2), pt(4, 1), pt(0, -5)}},
               {3, {pt(0, -5), pt(-6, 0)}}};
    PlanarizedDrawing d = ingest_polylines(p);
    REQUIRE(count_crossings(d) == 4);  // one triple point, three plain loop crossings
    REQUIRE(crossing_triples(d) == 6);

    SurgeryOutcome oc = isolate_loop(d, 2);
    CHECK(count_crossings(oc.drawing) == 1);
    CHECK(crossing_triples(oc.drawing) == 1);
    CHECK(is_good_drawing(oc.drawing).first);
    CHECK(oc.drawing.underlying == d.underlying);
    CHECK(oc.drawing.trails.at(2).size() == 1);
}

TEST_CASE("mixed defects are cleared in priority order") {
    PolylineDrawing p = digon_loop_polylines();
    p.graph.add_edge(3, 1, 1);
    p.curve[3] = {pt(6, 0), pt(8, 2), pt(10, -2), pt(10, 2), pt(8, -2), pt(6, 0)};
    PlanarizedDrawing d = ingest_polylines(p);
    REQUIRE(count_crossings(d) == 3);

    NormalizeResult r = normalize(d);
    check_normalized(d, r);
    CHECK(ops_of(r) ==
          std::vector<surgery_op>{surgery_op::reroute_self_intersection,
                                  surgery_op::remove_touching, surgery_op::isolate_loop});
    CHECK(count_crossings(r.drawing) == 0);
    CHECK(r.drawing.face_count() == 4);  // lens, two lobes, outer
    check_transfer(d, r);
}

TEST_CASE("good drawings come back untouched") {
    Multigraph g;
    for (int i = 0; i < 5; ++i) g.add_vertex(i);
    int id = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.add_edge(id++, i, j);
    PolylineDrawing p = circle_drawing(g, g.vertices());
    PlanarizedDrawing d = ingest_polylines(p);
    REQUIRE(is_good_drawing(d).first);

    NormalizeResult r = normalize(d);
    CHECK(r.steps.empty());
    CHECK(canonical_map_string(r.drawing) == canonical_map_string(d));
}

TEST_CASE("normalize is idempotent") {
    for (PlanarizedDrawing d : {figure_eight(), ingest_polylines(digon_loop_polylines()),
                                tangential_multi(), crossed_square()}) {
        NormalizeResult r = normalize(d);
        NormalizeResult r2 = normalize(r.drawing);
        CHECK(r2.steps.empty());
        CHECK(canonical_map_string(r2.drawing) == canonical_map_string(r.drawing));
    }
}

TEST_CASE("surgery preconditions are enforced") {
    Multigraph g;
    for (int i = 0; i < 5; ++i) g.add_vertex(i);
    int id = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.add_edge(id++, i, j);
    PlanarizedDrawing k5 = ingest_polylines(circle_drawing(g, g.vertices()));
    int x = -1;
    for (int v = 0; v < (int)k5.verts.size(); ++v)
        if (k5.verts[v].kind == pv_kind::crossing) x = v;
    REQUIRE(x >= 0);

    CHECK_THROWS_AS(remove_touching(k5, x), invalid_input);          // proper crossing
    CHECK_THROWS_AS(reroute_self_intersection(k5, x), invalid_input);  // two distinct edges
    CHECK_THROWS_AS(uncross_adjacent(k5, x), invalid_input);  // the crossing pair is independent
    CHECK_THROWS_AS(split_multicrossing(k5, x), invalid_input);  // only two passes
    CHECK_THROWS_AS(split_multicrossing(k5, 0), invalid_input);  // not a crossing
    CHECK_THROWS_AS(isolate_loop(k5, 0), invalid_input);         // not a loop

    PlanarizedDrawing t8 = tangent_eight();
    int site = touching_sites(t8)[0];
    CHECK_THROWS_AS(reroute_self_intersection(t8, site), invalid_input);  // already touching

    PlanarizedDrawing d2 = crossed_square();
    CHECK_THROWS_AS(uncross_double(d2, 0, 1), invalid_input);  // adjacent pair
    CHECK_THROWS_AS(uncross_double(d2, 0, 0), invalid_input);

    // a loop with no crossings at all cannot be isolated further
    Multigraph h;
    h.add_vertex(0);
    h.add_edge(0, 0, 0);
    PolylineDrawing lp;
    lp.graph = h;
    lp.position = {{0, pt(0, 0)}};
    lp.curve = {{0, {pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4), pt(0, 0)}}};
    PlanarizedDrawing ld = ingest_polylines(lp);
    CHECK_THROWS_AS(isolate_loop(ld, 0), invalid_input);
}
