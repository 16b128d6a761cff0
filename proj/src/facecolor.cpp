#include "facetint/facecolor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "facetint/generators.hpp"

namespace facetint {

namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

// faces on the two sides of segment s traversed pu -> pv
int left_face(const PlanarizedDrawing& d, int s) { return d.face_of_dart[2 * s]; }
int right_face(const PlanarizedDrawing& d, int s) { return d.face_of_dart[2 * s + 1]; }

}  // namespace

bool check_coloring(const PlanarizedDrawing& d, const FaceColoring& c) {
    if ((int)c.color.size() != d.face_count()) return false;
    for (int col : c.color)
        if (col < 0 || col >= c.k) return false;
    for (int s = 0; s < (int)d.segs.size(); ++s)
        if (c.color[left_face(d, s)] == c.color[right_face(d, s)]) return false;
    return true;
}

std::optional<FaceColoring> color_faces_exact(const PlanarizedDrawing& d, int k) {
    if (k < 2 || k > 4) throw invalid_input("color_faces_exact: k must be 2, 3 or 4");
    int F = d.face_count();
    std::vector<std::set<int>> adj(F);
    for (int s = 0; s < (int)d.segs.size(); ++s) {
        int a = left_face(d, s), b = right_face(d, s);
        if (a == b) return std::nullopt;  // a face touching itself never colors
        adj[a].insert(b);
        adj[b].insert(a);
    }

    std::vector<int> col(F, -1);
    if (d.outer >= 0) col[d.outer] = 0;
    int colored = (d.outer >= 0) ? 1 : 0;

    std::function<bool()> rec = [&]() {
        if (colored == F) return true;
        // saturation-degree order: most distinct neighbor colors first, then
        // highest degree, then least index
        int best = -1, best_sat = -1, best_deg = -1;
        for (int f = 0; f < F; ++f) {
            if (col[f] >= 0) continue;
            std::set<int> around;
            for (int g : adj[f])
                if (col[g] >= 0) around.insert(col[g]);
            int sat = (int)around.size(), deg = (int)adj[f].size();
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = f;
                best_sat = sat;
                best_deg = deg;
            }
        }
        for (int c = 0; c < k; ++c) {
            bool ok = true;
            for (int g : adj[best])
                if (col[g] == c) ok = false;
            if (!ok) continue;
            col[best] = c;
            ++colored;
            if (rec()) return true;
            col[best] = -1;
            --colored;
        }
        return false;
    };
    if (!rec()) return std::nullopt;
    return FaceColoring{k, col};
}

std::optional<FaceColoring> face_2_coloring(const PlanarizedDrawing& d) {
    int F = d.face_count();
    std::vector<std::vector<int>> adj(F);
    for (int s = 0; s < (int)d.segs.size(); ++s) {
        adj[left_face(d, s)].push_back(right_face(d, s));
        adj[right_face(d, s)].push_back(left_face(d, s));
    }
    std::vector<int> col(F, -1);
    col[d.outer] = 0;
    std::vector<int> queue{d.outer};
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (int g : adj[f])
            if (col[g] < 0) {
                col[g] = 1 - col[f];
                queue.push_back(g);
            }
    }
    FaceColoring c{2, col};
    if (!check_coloring(d, c)) return std::nullopt;  // odd dual cycle
    return c;
}

Orientation lift_orientation(const PlanarizedDrawing& d, const Orientation& o) {
    if (!(o.graph == d.underlying))
        throw invalid_input("lift_orientation: orientation belongs to a different graph");
    Orientation po;
    po.graph = planarization_graph(d);
    for (auto& [eid, steps] : d.trails) {
        bool along = o.forward.at(eid);
        for (const trail_step& st : steps) po.forward[st.seg] = (along ? !st.rev : st.rev);
    }
    return po;
}

FaceColoring coloring_from_mod3(const PlanarizedDrawing& d, const Orientation& po) {
    if (!(po.graph == planarization_graph(d)))
        throw invalid_input("coloring_from_mod3: orientation is not on this planarization");
    if (!check_mod3(po))
        throw invalid_input("coloring_from_mod3: an excess is not divisible by 3");

    int F = d.face_count();
    // crossing segment s in its directed sense moves from its left face to
    // its right face and adds +1 mod 3
    auto directed_left = [&](int s) { return po.forward.at(s) ? left_face(d, s) : right_face(d, s); };
    auto directed_right = [&](int s) { return po.forward.at(s) ? right_face(d, s) : left_face(d, s); };

    std::vector<std::vector<int>> segs_at(F);
    for (int s = 0; s < (int)d.segs.size(); ++s) {
        segs_at[left_face(d, s)].push_back(s);
        if (right_face(d, s) != left_face(d, s)) segs_at[right_face(d, s)].push_back(s);
    }
    std::vector<int> col(F, -1);
    col[d.outer] = 0;
    std::vector<int> queue{d.outer};
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (int s : segs_at[f]) {
            int dl = directed_left(s), dr = directed_right(s);
            int g = (dl == f) ? dr : dl;
            if (col[g] >= 0) continue;
            col[g] = (dl == f) ? mod3(col[f] + 1) : mod3(col[f] - 1);
            queue.push_back(g);
        }
    }
    for (int s = 0; s < (int)d.segs.size(); ++s)
        if (mod3(col[directed_right(s)] - col[directed_left(s)]) != 1)
            throw error("coloring_from_mod3: inconsistent potential");
    FaceColoring c{3, col};
    if (!check_coloring(d, c)) throw error("coloring_from_mod3: coloring is not proper");
    return c;
}

Orientation mod3_from_coloring(const PlanarizedDrawing& d, const FaceColoring& c) {
    if (c.k != 3) throw invalid_input("mod3_from_coloring: coloring must use 3 colors");
    if (!check_coloring(d, c)) throw invalid_input("mod3_from_coloring: coloring is not proper");
    Orientation po;
    po.graph = planarization_graph(d);
    for (int s = 0; s < (int)d.segs.size(); ++s) {
        // direct the segment so its left color exceeds its right color by 1
        int delta = mod3(c.color[left_face(d, s)] - c.color[right_face(d, s)]);
        po.forward[s] = (delta == 1);
    }
    if (!check_mod3(po)) throw error("mod3_from_coloring: excesses not divisible by 3");
    return po;
}

FaceColoring outerface_3coloring(const PlanarizedDrawing& d) {
    if (!bridges(d.underlying).empty())
        throw invalid_input("outerface_3coloring: underlying graph has a bridge");
    std::set<int> on_outer;
    for (int dd : d.face_orbits[d.outer]) on_outer.insert(d.origin(dd));
    for (int p = 0; p < (int)d.verts.size(); ++p)
        if (d.verts[p].kind == pv_kind::normal && !on_outer.count(p) && !d.segs.empty())
            throw invalid_input("outerface_3coloring: a vertex is not on the outer face");

    // odd-degree vertices, each with the out-dart of its first outer corner
    std::vector<std::pair<int, int>> corners;
    std::set<int> taken;
    for (int dd : d.face_orbits[d.outer]) {
        int p = d.origin(dd);
        if (d.verts[p].kind != pv_kind::normal) continue;
        if (d.underlying.degree(d.verts[p].orig) % 2 == 0) continue;
        if (taken.insert(p).second) corners.push_back({p, dd});
    }

    FaceColoring two;
    std::vector<int> face_map(d.face_count());  // face of d -> face of the helper
    if (corners.empty()) {
        auto c2 = face_2_coloring(d);
        if (!c2) throw error("outerface_3coloring: even-degree graph failed to 2-color");
        two = *c2;
        for (int f = 0; f < d.face_count(); ++f) face_map[f] = f;
    } else {
        // insert a helper vertex inside the outer face, joined to each odd
        // vertex at its recorded corner; clockwise around the helper the
        // spokes appear in reverse boundary order, since the boundary walk
        // keeps the face on its left
        PlanarizedDrawing d2 = d;
        int hub_pv = (int)d2.verts.size();
        int hub = d.underlying.vertices().back() + 1;
        int next_eid = d.underlying.edges().empty() ? 0 : d.underlying.edges().back().id + 1;
        d2.verts.push_back({pv_kind::normal, hub});
        d2.underlying.add_vertex(hub);
        d2.rot.push_back({});
        for (size_t i = 0; i < corners.size(); ++i) {
            auto [p, dout] = corners[i];
            int s = (int)d2.segs.size();
            d2.segs.push_back({hub_pv, p});
            d2.rot[hub_pv].push_back(2 * s);
            auto& r = d2.rot[p];
            r.insert(std::find(r.begin(), r.end(), dout), 2 * s + 1);
            d2.underlying.add_edge(next_eid, hub, d.verts[p].orig);
            d2.trails[next_eid] = {{s, false}};
            ++next_eid;
        }
        std::reverse(d2.rot[hub_pv].begin(), d2.rot[hub_pv].end());
        d2.face_orbits.clear();
        d2.outer = 0;
        d2.finalize();
        auto c2 = face_2_coloring(d2);
        if (!c2) throw error("outerface_3coloring: helper graph failed to 2-color");
        two = *c2;
        // interior faces of d are faces of d2 with the same darts
        for (int f = 0; f < d.face_count(); ++f)
            face_map[f] = d2.face_of_dart[d.face_orbits[f][0]];
    }

    std::vector<int> col(d.face_count());
    for (int f = 0; f < d.face_count(); ++f)
        col[f] = (f == d.outer) ? 2 : two.color[face_map[f]];
    FaceColoring c{3, col};
    if (!check_coloring(d, c)) throw error("outerface_3coloring: coloring is not proper");
    return c;
}

namespace {

std::vector<trail_step> reversed_trail(const std::vector<trail_step>& steps) {
    std::vector<trail_step> out(steps.rbegin(), steps.rend());
    for (trail_step& st : out) st.rev = !st.rev;
    return out;
}

// shortest cycle as an edge list; loops count as cycles of length 1 and
// parallel pairs as cycles of length 2. Deterministic: best length first,
// then the probe edge id.
std::optional<std::vector<int>> shortest_cycle(const Multigraph& g) {
    for (const Edge& e : g.edges())
        if (e.is_loop()) return std::vector<int>{e.id};
    std::optional<std::vector<int>> best;
    for (const Edge& e : g.edges()) {
        // BFS from e.u to e.v avoiding e itself
        std::map<int, std::pair<int, int>> pred;  // vertex -> (prev vertex, via edge)
        std::vector<int> queue{e.u};
        pred[e.u] = {-1, -1};
        while (!queue.empty()) {
            std::vector<int> next;
            for (int x : queue) {
                for (int f : g.incident_edges(x)) {
                    if (f == e.id) continue;
                    int y = g.edge(f).other(x);
                    if (pred.count(y)) continue;
                    pred[y] = {x, f};
                    next.push_back(y);
                }
            }
            queue = std::move(next);
            if (pred.count(e.v)) break;
        }
        if (!pred.count(e.v)) continue;
        std::vector<int> cyc{e.id};
        for (int x = e.v; x != e.u; x = pred[x].first) cyc.push_back(pred[x].second);
        if (!best || cyc.size() < best->size()) best = cyc;
    }
    return best;
}

}  // namespace

std::pair<PlanarizedDrawing, FaceColoring> leafless_3colorable_drawing(const Multigraph& g) {
    for (int v : g.vertices())
        if (g.degree(v) < 2)
            throw invalid_input(
                "leafless_3colorable_drawing: a vertex of degree below 2 makes the incident "
                "face touch itself");
    if (!g.is_connected())
        throw invalid_input("leafless_3colorable_drawing: graph must be connected");

    // peel vertex-disjoint cycles until the leftover is a forest; remember
    // the least edge of each cycle
    Multigraph work = g;
    std::vector<int> chosen;
    while (true) {
        auto cyc = shortest_cycle(work);
        if (!cyc) break;
        chosen.push_back(*std::min_element(cyc->begin(), cyc->end()));
        std::set<int> cv;
        for (int eid : *cyc) {
            cv.insert(work.edge(eid).u);
            cv.insert(work.edge(eid).v);
        }
        Multigraph next;
        for (int v : work.vertices())
            if (!cv.count(v)) next.add_vertex(v);
        for (const Edge& e : work.edges())
            if (!cv.count(e.u) && !cv.count(e.v)) next.add_edge(e.id, e.u, e.v);
        work = next;
    }

    // hub graph: delete the chosen edges, add a vertex adjacent to both ends
    // of each
    int hub = g.vertices().back() + 1;
    int next_eid = g.edges().back().id + 1;
    Multigraph gp;
    for (int v : g.vertices()) gp.add_vertex(v);
    gp.add_vertex(hub);
    std::set<int> dropped(chosen.begin(), chosen.end());
    for (const Edge& e : g.edges())
        if (!dropped.count(e.id)) gp.add_edge(e.id, e.u, e.v);
    std::map<int, std::pair<int, int>> spokes;  // chosen edge -> its two spokes
    for (int eid : chosen) {
        const Edge& e = g.edge(eid);
        gp.add_edge(next_eid, hub, e.u);
        gp.add_edge(next_eid + 1, hub, e.v);
        spokes[eid] = {next_eid, next_eid + 1};
        next_eid += 2;
    }
    if (!bridges(gp).empty()) throw error("leafless_3colorable_drawing: hub graph has a bridge");

    PlanarizedDrawing dp = ingest_polylines(circle_drawing(gp, gp.vertices()));
    FaceColoring cp = outerface_3coloring(dp);
    int hub_pv = dp.pv_of_vertex.at(hub);

    if (chosen.size() >= 2) {
        // the hub point becomes a crossing traversed by the restored edges;
        // darts and faces stay exactly as they are
        PlanarizedDrawing d2 = dp;
        d2.verts[hub_pv] = {pv_kind::crossing, -1};
        d2.underlying = g;
        for (auto& [eid, sp] : spokes) {
            std::vector<trail_step> t = reversed_trail(d2.trails.at(sp.first));
            const std::vector<trail_step>& tb = d2.trails.at(sp.second);
            t.insert(t.end(), tb.begin(), tb.end());
            d2.trails.erase(sp.first);
            d2.trails.erase(sp.second);
            d2.trails[eid] = t;
        }
        d2.face_orbits.clear();
        d2.finalize();
        FaceColoring c{3, cp.color};
        if (!check_coloring(d2, c)) throw error("leafless_3colorable_drawing: transfer failed");
        return {d2, c};
    }

    // a single cycle leaves a hub of degree 2: the point dissolves and its
    // two segments fuse into one, after which faces must be re-identified
    int eid = chosen[0];
    auto [sa, sb] = spokes.at(eid);
    const std::vector<trail_step>& ta = dp.trails.at(sa);  // hub -> e.u
    const std::vector<trail_step>& tb = dp.trails.at(sb);  // hub -> e.v
    int segA = ta.front().seg, segB = tb.front().seg;
    int qa = ta.front().rev ? dp.segs[segA].pu : dp.segs[segA].pv;  // far end of segA
    int qb = tb.front().rev ? dp.segs[segB].pu : dp.segs[segB].pv;
    int lo = std::min(segA, segB), hi = std::max(segA, segB);

    // segment renumbering: hi disappears, lo becomes the fused segment qa->qb
    auto new_seg = [&](int s) { return s - (s > hi ? 1 : 0); };
    auto new_pv = [&](int p) { return p - (p > hub_pv ? 1 : 0); };
    int dart_qa = 2 * segA + (ta.front().rev ? 0 : 1);  // old dart at qa
    int dart_qb = 2 * segB + (tb.front().rev ? 0 : 1);
    auto new_dart = [&](int dd) -> int {
        int s = dd / 2;
        if (s == segA || s == segB) {
            if (dd == dart_qa) return 2 * new_seg(lo);
            if (dd == dart_qb) return 2 * new_seg(lo) + 1;
            return -1;  // the two darts at the hub vanish
        }
        return 2 * new_seg(s) + (dd & 1);
    };

    PlanarizedDrawing d2;
    d2.underlying = g;
    for (int p = 0; p < (int)dp.verts.size(); ++p)
        if (p != hub_pv) d2.verts.push_back(dp.verts[p]);
    for (int s = 0; s < (int)dp.segs.size(); ++s) {
        if (s == hi) continue;
        if (s == lo)
            d2.segs.push_back({new_pv(qa), new_pv(qb)});
        else
            d2.segs.push_back({new_pv(dp.segs[s].pu), new_pv(dp.segs[s].pv)});
    }
    for (int p = 0; p < (int)dp.verts.size(); ++p) {
        if (p == hub_pv) continue;
        std::vector<int> r;
        for (int dd : dp.rot[p]) {
            int nd = new_dart(dd);
            if (nd >= 0) r.push_back(nd);
        }
        d2.rot.push_back(r);
    }
    for (auto& [te, steps] : dp.trails) {
        if (te == sa || te == sb) continue;
        std::vector<trail_step> ns;
        for (const trail_step& st : steps) ns.push_back({new_seg(st.seg), st.rev});
        d2.trails[te] = ns;
    }
    {
        std::vector<trail_step> t = reversed_trail(ta);
        t.pop_back();                          // drop the old segA step
        t.push_back({new_seg(lo), false});     // fused qa -> qb
        for (size_t i = 0; i + 1 < t.size(); ++i) t[i].seg = new_seg(t[i].seg);
        std::vector<trail_step> rest(tb.begin() + 1, tb.end());
        for (trail_step& st : rest) st.seg = new_seg(st.seg);
        t.insert(t.end(), rest.begin(), rest.end());
        d2.trails[eid] = t;
    }
    d2.outer = 0;
    d2.finalize();

    // faces of dp map to faces of d2 through any surviving dart
    std::vector<int> colors(d2.face_count(), -1);
    int new_outer = -1;
    for (int f = 0; f < dp.face_count(); ++f) {
        int nd = -1;
        for (int dd : dp.face_orbits[f])
            if ((nd = new_dart(dd)) >= 0) break;
        if (nd < 0) throw error("leafless_3colorable_drawing: face lost all darts");
        colors[d2.face_of_dart[nd]] = cp.color[f];
        if (f == dp.outer) new_outer = d2.face_of_dart[nd];
    }
    d2.outer = new_outer;
    FaceColoring c{3, colors};
    if (!check_coloring(d2, c)) throw error("leafless_3colorable_drawing: transfer failed");
    return {d2, c};
}

namespace {

enum core_sym { X1, X2, X3, U, V1, V2 };

struct core_arc {
    core_sym from, to;
};

// fixed orientation of the six-vertex core for the adjacent case: x1 and v1
// are sources, x2 and v2 sinks, every excess divisible by 3
const core_arc CASE1_D1[9] = {{X1, X2}, {X1, V2}, {X1, U}, {V1, X2}, {U, X2},
                              {V1, X3}, {V1, U},  {X3, V2}, {U, V2}};

// fixed orientation for the non-adjacent case: excesses at x1, x2, x3 are
// congruent to 1, the rest to 0
const core_arc CASE2_D1[9] = {{X2, X1}, {X1, V2}, {X1, U}, {V1, X2}, {X2, V2},
                              {V1, X3}, {U, X3},  {V1, U}, {U, V2}};

int edge_between(const Multigraph& g, int a, int b) {
    int found = -1;
    for (int eid : g.incident_edges(a))
        if (g.edge(eid).other(a) == b) {
            if (found >= 0) throw error("edge_between: pair is not simple");
            found = eid;
        }
    if (found < 0) throw error("edge_between: missing edge");
    return found;
}

}  // namespace

FaceColoring k3nplus_coloring(const PlanarizedDrawing& d) {
    auto st = k3nplus_structure(d.underlying);
    if (!st)
        throw invalid_input("k3nplus_coloring: underlying graph is not a K_{3,n}^+ with n >= 4");
    if (!is_good_drawing(d).first)
        throw invalid_input("k3nplus_coloring: drawing is not good; normalize it first");

    std::set<int> aset(st->a.begin(), st->a.end());
    // a crossing between two edges of the bipartite part; one exists because
    // that part is non-planar and the drawing is good
    int cross = -1, e1 = -1, e2 = -1;
    for (int x = 0; x < (int)d.verts.size() && cross < 0; ++x) {
        if (d.verts[x].kind != pv_kind::crossing) continue;
        auto passes = passes_through(d, x);
        if (passes.size() != 2) continue;
        int f1 = passes[0].edge, f2 = passes[1].edge;
        if (f1 == st->special_edge || f2 == st->special_edge) continue;
        cross = x;
        e1 = f1;
        e2 = f2;
    }
    if (cross < 0) throw error("k3nplus_coloring: no crossing between long-side edges");

    auto a_end = [&](int eid) {
        const Edge& e = d.underlying.edge(eid);
        return aset.count(e.u) ? e.u : e.v;
    };
    auto b_end = [&](int eid) {
        const Edge& e = d.underlying.edge(eid);
        return aset.count(e.u) ? e.v : e.u;
    };
    int u1 = a_end(e1), u2 = a_end(e2);
    bool case1 = (u1 != st->a[2] && u2 != st->a[2]);
    if (!case1 && u1 == st->a[2]) {
        std::swap(e1, e2);
        std::swap(u1, u2);
    }
    // labels: case 1 takes x1, x2 = the crossing ends of the special edge;
    // case 2 takes x1 = the crossing end not on the special edge's far side
    std::map<core_sym, int> at;
    at[V1] = b_end(e1);
    at[V2] = b_end(e2);
    if (case1) {
        at[X1] = u1;
        at[X2] = u2;
        at[X3] = st->a[2];
    } else {
        at[X1] = u1;
        at[X3] = st->a[2];
        at[X2] = (st->a[0] == u1) ? st->a[1] : st->a[0];
    }

    auto [dplus, gplus] = place_vertex_at_crossing(d, cross);
    int hub = gplus.vertices().back();
    at[U] = hub;

    Orientation D;
    D.graph = gplus;
    const core_arc* core = case1 ? CASE1_D1 : CASE2_D1;
    for (int i = 0; i < 9; ++i) {
        int eid = edge_between(gplus, at.at(core[i].from), at.at(core[i].to));
        const Edge& e = gplus.edge(eid);
        D.forward[eid] = (e.u == at.at(core[i].from));
    }

    // the rest of the graph is the complete bipartite part on the remaining
    // n-2 long-side vertices
    Multigraph rest;
    for (int v : st->a) rest.add_vertex(v);
    std::vector<int> brest;
    for (int v : st->b)
        if (v != at[V1] && v != at[V2]) {
            rest.add_vertex(v);
            brest.push_back(v);
        }
    for (const Edge& e : gplus.edges())
        if (rest.has_vertex(e.u) && rest.has_vertex(e.v) && e.id != st->special_edge &&
            !D.forward.count(e.id))
            rest.add_edge(e.id, e.u, e.v);
    auto o2 = mod3_orientation(rest);
    if (!o2) throw error("k3nplus_coloring: bipartite part has no valid orientation");
    if (!case1) {
        // shift every excess on the 3-side to 2: make some degree-3 vertex b
        // a source, then reverse its three arcs
        int b = brest.front();
        if (o2->excess(b) < 0) *o2 = o2->reversed();
        for (int eid : rest.incident_edges(b)) o2->forward[eid] = !o2->forward.at(eid);
    }
    for (auto& [eid, fwd] : o2->forward) D.forward[eid] = fwd;

    if (!check_mod3(D)) throw error("k3nplus_coloring: constructed orientation is broken");
    FaceColoring c = coloring_from_mod3(dplus, lift_orientation(dplus, D));
    // dplus has exactly the faces of d, in the same order
    if (!check_coloring(d, c)) throw error("k3nplus_coloring: coloring does not transfer");
    return c;
}

}  // namespace facetint
