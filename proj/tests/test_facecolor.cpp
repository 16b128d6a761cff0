#include "facetint/facecolor.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "facetint/generators.hpp"

using namespace facetint;

namespace {

point pt(long x, long y) { return {rational(x), rational(y)}; }

PlanarizedDrawing square_drawing() {
    PolylineDrawing p;
    p.graph = cycle_graph(4);
    p.position = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(4, 4)}, {3, pt(0, 4)}};
    p.curve = {{0, {pt(0, 0), pt(4, 0)}},
               {1, {pt(4, 0), pt(4, 4)}},
               {2, {pt(4, 4), pt(0, 4)}},
               {3, {pt(0, 4), pt(0, 0)}}};
    return ingest_polylines(p);
}

PlanarizedDrawing convex_k4_drawing() {
    PolylineDrawing p;
    p.graph = complete_graph(4);
    p.position = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(4, 4)}, {3, pt(0, 4)}};
    for (const Edge& e : p.graph.edges())
        p.curve[e.id] = {p.position.at(e.u), p.position.at(e.v)};
    return ingest_polylines(p);
}

PlanarizedDrawing figure_eight_drawing() {
    Multigraph g;
    g.add_vertex(0);
    g.add_edge(0, 0, 0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}};
    p.curve = {{0, {pt(0, 0), pt(6, 3), pt(6, -3), pt(0, 3), pt(0, 0)}}};
    return ingest_polylines(p);
}

Multigraph theta_graph() {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    for (int i = 0; i < 3; ++i) g.add_edge(i, 0, 1);
    return g;
}

Multigraph bouquet(int loops) {
    Multigraph g;
    g.add_vertex(0);
    for (int i = 0; i < loops; ++i) g.add_edge(i, 0, 0);
    return g;
}

int crossings_of(const PlanarizedDrawing& d) {
    int c = 0;
    for (auto& v : d.verts)
        if (v.kind == pv_kind::crossing) ++c;
    return c;
}

std::multiset<int> interior_colors(const PlanarizedDrawing& d, const FaceColoring& c) {
    std::multiset<int> out;
    for (int f = 0; f < d.face_count(); ++f)
        if (f != d.outer) out.insert(c.color[f]);
    return out;
}

}  // namespace

TEST_CASE("check_coloring accepts proper and rejects improper") {
    PlanarizedDrawing d = square_drawing();
    CHECK(check_coloring(d, FaceColoring{2, {0, 1}}));
    CHECK(check_coloring(d, FaceColoring{3, {2, 1}}));
    CHECK(!check_coloring(d, FaceColoring{2, {1, 1}}));
    CHECK(!check_coloring(d, FaceColoring{2, {0}}));       // wrong size
    CHECK(!check_coloring(d, FaceColoring{2, {0, 2}}));    // color out of range
}

TEST_CASE("square: inner face 1, outer face 0") {
    PlanarizedDrawing d = square_drawing();
    auto c = color_faces_exact(d, 2);
    REQUIRE(c.has_value());
    CHECK(c->color[d.outer] == 0);
    CHECK(c->color[1 - d.outer] == 1);

    auto c2 = face_2_coloring(d);
    REQUIRE(c2.has_value());
    CHECK(c2->color == c->color);
}

TEST_CASE("crossing-free K4 needs four colors, matching its missing orientation") {
    auto emb = find_planar_embedding(complete_graph(4));
    REQUIRE(emb.has_value());
    CHECK(!color_faces_exact(*emb, 2).has_value());
    CHECK(!color_faces_exact(*emb, 3).has_value());
    CHECK(!mod3_orientation(complete_graph(4)).has_value());
    auto c4 = color_faces_exact(*emb, 4);
    REQUIRE(c4.has_value());
    CHECK(check_coloring(*emb, *c4));
}

TEST_CASE("convex K4 is 3-colorable even though K4 has no flow") {
    PlanarizedDrawing d = convex_k4_drawing();
    CHECK(!color_faces_exact(d, 2).has_value());
    auto c = color_faces_exact(d, 3);
    REQUIRE(c.has_value());
    CHECK(check_coloring(d, *c));
    CHECK(c->color[d.outer] == 0);
    // the four triangles around the crossing alternate between two colors
    CHECK(interior_colors(d, *c) == std::multiset<int>{1, 1, 2, 2});

    // the coloring orients the planarization, but the crossing absorbs the
    // imbalance that blocks an orientation of K4 itself
    Orientation po = mod3_from_coloring(d, *c);
    CHECK(check_mod3(po));
}

TEST_CASE("a bridge rules out every face count") {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 0, 1);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}, {1, pt(2, 0)}};
    p.curve = {{0, {pt(0, 0), pt(2, 0)}}};
    PlanarizedDrawing d = ingest_polylines(p);
    CHECK(!face_2_coloring(d).has_value());
    for (int k = 2; k <= 4; ++k) CHECK(!color_faces_exact(d, k).has_value());
}

TEST_CASE("figure-eight: both lobes 1, outer 0") {
    PlanarizedDrawing d = figure_eight_drawing();
    REQUIRE(d.face_count() == 3);
    auto c = face_2_coloring(d);
    REQUIRE(c.has_value());
    CHECK(c->color[d.outer] == 0);
    CHECK(interior_colors(d, *c) == std::multiset<int>{1, 1});

    // the loop lifts to a through-orientation of the crossing
    Orientation o;
    o.graph = d.underlying;
    o.forward[0] = true;
    Orientation po = lift_orientation(d, o);
    for (int v = 0; v < (int)d.verts.size(); ++v)
        if (d.verts[v].kind == pv_kind::crossing) CHECK(po.excess(v) == 0);
    FaceColoring c3 = coloring_from_mod3(d, po);
    CHECK(check_coloring(d, c3));
    CHECK(c3.color[d.outer] == 0);
}

TEST_CASE("plane maps: 3-colorability coincides with orientability") {
    std::vector<Multigraph> zoo = {cycle_graph(3), cycle_graph(4), cycle_graph(2),
                                   complete_graph(4), theta_graph(), bouquet(2)};
    for (const Multigraph& g : zoo) {
        auto emb = find_planar_embedding(g);
        REQUIRE(emb.has_value());
        CHECK(color_faces_exact(*emb, 3).has_value() == mod3_orientation(g).has_value());
    }
}

TEST_CASE("triangle: orientation, coloring, and back") {
    PolylineDrawing p;
    p.graph = cycle_graph(3);
    p.position = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(0, 3)}};
    p.curve = {{0, {pt(0, 0), pt(4, 0)}}, {1, {pt(4, 0), pt(0, 3)}}, {2, {pt(0, 3), pt(0, 0)}}};
    PlanarizedDrawing d = ingest_polylines(p);

    Orientation o;
    o.graph = d.underlying;
    for (int e = 0; e < 3; ++e) o.forward[e] = true;  // directed cycle
    Orientation po = lift_orientation(d, o);
    CHECK(check_mod3(po));
    FaceColoring c = coloring_from_mod3(d, po);
    CHECK(c.color[d.outer] == 0);
    int inner = c.color[1 - d.outer];
    CHECK((inner == 1 || inner == 2));

    // back: the rebuilt orientation reverses every segment, and a second
    // coloring pass negates the colors
    Orientation back = mod3_from_coloring(d, c);
    for (int s = 0; s < 3; ++s) CHECK(back.forward.at(s) == !po.forward.at(s));
    FaceColoring again = coloring_from_mod3(d, back);
    for (int f = 0; f < d.face_count(); ++f) CHECK(again.color[f] == (3 - c.color[f]) % 3);
}

TEST_CASE("coloring_from_mod3 and mod3_from_coloring reject bad input") {
    PlanarizedDrawing d = square_drawing();
    Orientation wrong;
    wrong.graph = cycle_graph(3);
    CHECK_THROWS_AS(coloring_from_mod3(d, wrong), invalid_input);

    Orientation unbalanced;
    unbalanced.graph = planarization_graph(d);
    for (int s = 0; s < 4; ++s) unbalanced.forward[s] = (s == 0);
    CHECK_THROWS_AS(coloring_from_mod3(d, unbalanced), invalid_input);

    CHECK_THROWS_AS(mod3_from_coloring(d, FaceColoring{2, {0, 1}}), invalid_input);
    CHECK_THROWS_AS(mod3_from_coloring(d, FaceColoring{3, {1, 1}}), invalid_input);
}

TEST_CASE("convex K33: abstract orientation lifts and colors the drawing") {
    Multigraph g = complete_bipartite(3, 3);
    auto o = mod3_orientation(g);
    REQUIRE(o.has_value());
    PlanarizedDrawing d = ingest_polylines(circle_drawing(g, g.vertices()));
    CHECK(is_good_drawing(d).first);
    CHECK(crossings_of(d) > 0);

    Orientation po = lift_orientation(d, *o);
    CHECK(check_mod3(po));
    for (int v = 0; v < (int)d.verts.size(); ++v)
        if (d.verts[v].kind == pv_kind::crossing) CHECK(po.excess(v) == 0);
    FaceColoring c = coloring_from_mod3(d, po);
    CHECK(check_coloring(d, c));
    CHECK(c.k == 3);
}

TEST_CASE("outer-face coloring on convex drawings") {
    PlanarizedDrawing k4 = convex_k4_drawing();
    FaceColoring c = outerface_3coloring(k4);
    CHECK(check_coloring(k4, c));
    CHECK(c.color[k4.outer] == 2);
    for (int f = 0; f < k4.face_count(); ++f)
        if (f != k4.outer) CHECK(c.color[f] < 2);

    Multigraph k33 = complete_bipartite(3, 3);
    PlanarizedDrawing d33 = ingest_polylines(circle_drawing(k33, k33.vertices()));
    FaceColoring c33 = outerface_3coloring(d33);
    CHECK(check_coloring(d33, c33));
    CHECK(c33.color[d33.outer] == 2);
}

TEST_CASE("outer-face coloring, even degrees: parity coloring with outer 2") {
    Multigraph g = cycle_graph(5);
    PlanarizedDrawing d = ingest_polylines(circle_drawing(g, g.vertices()));
    REQUIRE(d.face_count() == 2);
    FaceColoring c = outerface_3coloring(d);
    CHECK(c.color[d.outer] == 2);
    CHECK(c.color[1 - d.outer] == 1);
}

TEST_CASE("outer-face coloring on a single vertex") {
    Multigraph g;
    g.add_vertex(0);
    PolylineDrawing p;
    p.graph = g;
    p.position = {{0, pt(0, 0)}};
    PlanarizedDrawing d = ingest_polylines(p);
    FaceColoring c = outerface_3coloring(d);
    CHECK(c.color == std::vector<int>{2});
}

TEST_CASE("outer-face coloring preconditions") {
    // a bridge between two triangles
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 1, 2);
    g.add_edge(2, 2, 0);
    g.add_edge(3, 3, 4);
    g.add_edge(4, 4, 5);
    g.add_edge(5, 5, 3);
    g.add_edge(6, 2, 3);
    PlanarizedDrawing d = ingest_polylines(circle_drawing(g, g.vertices()));
    CHECK_THROWS_AS(outerface_3coloring(d), invalid_input);

    // an interior vertex: one vertex of a plane K4 lies off the outer face
    auto emb = find_planar_embedding(complete_graph(4));
    REQUIRE(emb.has_value());
    CHECK_THROWS_AS(outerface_3coloring(*emb), invalid_input);
}

TEST_CASE("leafless drawing of a cycle") {
    Multigraph g = cycle_graph(5);
    auto [d, c] = leafless_3colorable_drawing(g);
    CHECK(d.underlying == g);
    CHECK(check_coloring(d, c));
    CHECK(c.color[d.outer] == 2);
}

TEST_CASE("leafless drawing of two triangles joined by a double bond") {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 1, 2);
    g.add_edge(2, 2, 0);
    g.add_edge(3, 3, 4);
    g.add_edge(4, 4, 5);
    g.add_edge(5, 5, 3);
    g.add_edge(6, 2, 3);
    g.add_edge(7, 5, 0);
    auto [d, c] = leafless_3colorable_drawing(g);
    CHECK(d.underlying == g);
    CHECK(check_coloring(d, c));
    // the two peeled triangles reroute through one shared crossing
    CHECK(crossings_of(d) >= 1);
}

TEST_CASE("leafless drawing of a bouquet of two loops") {
    Multigraph g = bouquet(2);
    auto [d, c] = leafless_3colorable_drawing(g);
    CHECK(d.underlying == g);
    CHECK(d.face_count() == 3);
    CHECK(check_coloring(d, c));
    CHECK(c.color[d.outer] == 2);
}

TEST_CASE("leafless drawing of K4") {
    Multigraph g = complete_graph(4);
    auto [d, c] = leafless_3colorable_drawing(g);
    CHECK(d.underlying == g);
    CHECK(check_coloring(d, c));
    CHECK(crossings_of(d) >= 1);  // K4 has no crossing-free 3-colorable drawing
}

TEST_CASE("leafless rejects leaves and disconnection") {
    Multigraph path;
    path.add_vertex(0);
    path.add_vertex(1);
    path.add_vertex(2);
    path.add_edge(0, 0, 1);
    path.add_edge(1, 1, 2);
    CHECK_THROWS_AS(leafless_3colorable_drawing(path), invalid_input);

    Multigraph two;
    for (int i = 0; i < 6; ++i) two.add_vertex(i);
    two.add_edge(0, 0, 1);
    two.add_edge(1, 1, 2);
    two.add_edge(2, 2, 0);
    two.add_edge(3, 3, 4);
    two.add_edge(4, 4, 5);
    two.add_edge(5, 5, 3);
    CHECK_THROWS_AS(leafless_3colorable_drawing(two), invalid_input);

    Multigraph lone;
    lone.add_vertex(0);
    CHECK_THROWS_AS(leafless_3colorable_drawing(lone), invalid_input);
}

TEST_CASE("k3nplus structure recognition") {
    auto st = k3nplus_structure(k3nplus(4));
    REQUIRE(st.has_value());
    CHECK(st->a == std::vector<int>{0, 1, 2});
    CHECK(st->special_edge == 12);
    CHECK(st->b == std::vector<int>{3, 4, 5, 6});

    CHECK(!k3nplus_structure(k3nplus(3)).has_value());
    CHECK(!k3nplus_structure(complete_bipartite(3, 5)).has_value());
    CHECK(!k3nplus_structure(complete_graph(4)).has_value());

    // a relabeled copy is still recognized
    Multigraph g = k3nplus(5);
    Multigraph relabeled;
    for (int v : g.vertices()) relabeled.add_vertex(17 - v);
    for (const Edge& e : g.edges()) relabeled.add_edge(e.id + 100, 17 - e.u, 17 - e.v);
    auto st2 = k3nplus_structure(relabeled);
    REQUIRE(st2.has_value());
    CHECK(st2->a == std::vector<int>{16, 17, 15});
    CHECK(st2->special_edge == 115);
    CHECK(st2->b == std::vector<int>{10, 11, 12, 13, 14});
}

TEST_CASE("generator shapes") {
    Multigraph pet = petersen_graph();
    CHECK(pet.vertex_count() == 10);
    CHECK(pet.edge_count() == 15);
    for (int v : pet.vertices()) CHECK(pet.degree(v) == 3);

    CHECK(cycle_graph(1).edge(0).is_loop());
    CHECK(cycle_graph(2).edge_count() == 2);
    CHECK(wheel_graph(4).edge_count() == 8);
    CHECK(k3nplus(6).edge_count() == 19);
}

TEST_CASE("k3nplus coloring of the convex drawing") {
    Multigraph g = k3nplus(4);
    PlanarizedDrawing d = ingest_polylines(circle_drawing(g, g.vertices()));
    REQUIRE(is_good_drawing(d).first);
    FaceColoring c = k3nplus_coloring(d);
    CHECK(check_coloring(d, c));
    CHECK(c.k == 3);
    CHECK(c.color[d.outer] == 0);

    // independent confirmation by exhaustive search
    CHECK(color_faces_exact(d, 3).has_value());
}

TEST_CASE("k3nplus coloring rejects n=3 and non-good drawings") {
    Multigraph g3 = k3nplus(3);
    PlanarizedDrawing d3 = ingest_polylines(circle_drawing(g3, g3.vertices()));
    CHECK_THROWS_AS(k3nplus_coloring(d3), invalid_input);

    PlanarizedDrawing k4 = convex_k4_drawing();
    CHECK_THROWS_AS(k3nplus_coloring(k4), invalid_input);
}

TEST_CASE("k3nplus coloring across shuffled drawings hits both crossing cases") {
    int adjacent_case = 0, separate_case = 0;
    for (int n : {4, 5}) {
        Multigraph g = k3nplus(n);
        std::vector<int> order = g.vertices();
        std::mt19937 rng(1234 + n);
        for (int trial = 0; trial < 6; ++trial) {
            std::shuffle(order.begin(), order.end(), rng);
            PlanarizedDrawing d = ingest_polylines(circle_drawing(g, order));
            if (!is_good_drawing(d).first) continue;
            FaceColoring c = k3nplus_coloring(d);
            CHECK(check_coloring(d, c));

            // replicate the crossing choice to record which case ran
            auto st = k3nplus_structure(d.underlying);
            std::set<int> aset(st->a.begin(), st->a.end());
            for (int x = 0; x < (int)d.verts.size(); ++x) {
                if (d.verts[x].kind != pv_kind::crossing) continue;
                auto passes = passes_through(d, x);
                int f1 = passes[0].edge, f2 = passes[1].edge;
                if (f1 == st->special_edge || f2 == st->special_edge) continue;
                auto a_end = [&](int eid) {
                    const Edge& e = d.underlying.edge(eid);
                    return aset.count(e.u) ? e.u : e.v;
                };
                if (a_end(f1) != st->a[2] && a_end(f2) != st->a[2])
                    ++adjacent_case;
                else
                    ++separate_case;
                break;
            }
        }
    }
    CHECK(adjacent_case > 0);
    CHECK(separate_case > 0);
}
