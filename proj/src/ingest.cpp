#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "facetint/drawing.hpp"

namespace facetint {

namespace {

struct piece_ref {
    int edge;
    int j;  // piece index within the edge's polyline
};

// curve position along an edge as a single rational: piece index + parameter
rational global_param(int j, const rational& t) { return rational(j) + t; }

long floor_nonneg(const rational& g) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return (numerator(g) / denominator(g)).convert_to<long>();
}

point point_at(const std::vector<point>& pts, const rational& g) {
    long j = floor_nonneg(g);
    rational t = g - j;
    if (t == 0) return pts[j];
    return pts[j] + (pts[j + 1] - pts[j]) * t;
}

// travel direction at position g; backward = against increasing g
point dir_at(const std::vector<point>& pts, const rational& g, bool backward) {
    long j = floor_nonneg(g);
    if (!backward) return pts[j + 1] - pts[j];
    if (rational(j) == g) return pts[j - 1] - pts[j];
    return pts[j] - pts[j + 1];
}

}  // namespace

PlanarizedDrawing ingest_polylines(const PolylineDrawing& p) {
    const Multigraph& g = p.graph;
    if (g.vertex_count() == 0) throw invalid_input("ingest: empty graph");

    std::map<point, int> vertex_at;
    for (int v : g.vertices()) {
        auto it = p.position.find(v);
        if (it == p.position.end()) throw invalid_input("ingest: vertex without position");
        if (!vertex_at.emplace(it->second, v).second)
            throw invalid_input("ingest: coincident vertex images");
    }

    for (const Edge& ed : g.edges()) {
        auto it = p.curve.find(ed.id);
        if (it == p.curve.end()) throw invalid_input("ingest: edge without polyline");
        const std::vector<point>& pts = it->second;
        if (pts.size() < 2) throw invalid_input("ingest: polyline needs at least two points");
        if (pts.front() != p.position.at(ed.u) || pts.back() != p.position.at(ed.v))
            throw invalid_input("ingest: polyline endpoints do not match vertex images");
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i] == pts[i + 1])
                throw invalid_input("ingest: repeated consecutive polyline point");
    }

    std::vector<piece_ref> pieces;
    std::map<int, int> npieces;
    for (const Edge& ed : g.edges()) {
        const std::vector<point>& pts = p.curve.at(ed.id);
        npieces[ed.id] = (int)pts.size() - 1;
        for (int j = 0; j + 1 < (int)pts.size(); ++j) pieces.push_back({ed.id, j});
    }

    // interior meeting points: point -> set of (edge, global param)
    std::map<point, std::set<std::pair<int, rational>>> meets;
    std::map<std::pair<int, rational>, point> entry_point;

    auto note_hit = [&](const piece_ref& pr, const point& hp) {
        const std::vector<point>& pts = p.curve.at(pr.edge);
        rational t = pts[pr.j] == pts[pr.j + 1] ? rational(0)
                                                : param_on(pts[pr.j], pts[pr.j + 1], hp);
        rational gparam = global_param(pr.j, t);
        bool at_end = gparam == 0 || gparam == npieces.at(pr.edge);
        auto vit = vertex_at.find(hp);
        if (vit != vertex_at.end()) {
            if (!at_end) throw invalid_input("ingest: curve passes through a vertex image");
            return;  //共 shared endpoint contact, not a crossing
        }
        if (at_end) throw invalid_input("ingest: endpoint off the vertex image");
        meets[hp].insert({pr.edge, gparam});
        entry_point[{pr.edge, gparam}] = hp;
    };

    for (size_t a = 0; a < pieces.size(); ++a) {
        for (size_t b = a + 1; b < pieces.size(); ++b) {
            const piece_ref& pa = pieces[a];
            const piece_ref& pb = pieces[b];
            const std::vector<point>& A = p.curve.at(pa.edge);
            const std::vector<point>& B = p.curve.at(pb.edge);
            seg_hit h = seg_intersect(A[pa.j], A[pa.j + 1], B[pb.j], B[pb.j + 1]);
            if (h.kind == hit_kind::none) continue;
            if (h.kind == hit_kind::overlap)
                throw invalid_input("ingest: positive-length overlap between curve pieces");
            note_hit(pa, h.p);
            note_hit(pb, h.p);
        }
    }

    // crossing vertices: meeting points passed at least twice
    PlanarizedDrawing d;
    d.underlying = g;
    std::map<int, int> pv_of;
    for (int v : g.vertices()) {
        pv_of[v] = (int)d.verts.size();
        d.verts.push_back({pv_kind::normal, v});
    }
    std::map<point, int> crossing_pv;
    for (auto it = meets.begin(); it != meets.end(); ++it) {
        if (it->second.size() < 2) continue;  // a bend recorded once by its own two pieces
        crossing_pv[it->first] = (int)d.verts.size();
        d.verts.push_back({pv_kind::crossing, -1});
    }

    // split every edge at its interior meeting positions
    struct seg_geo {
        int edge;
        rational g0, g1;
    };
    std::vector<seg_geo> seg_pos;
    for (const Edge& ed : g.edges()) {
        int e = ed.id;
        std::vector<rational> cuts;
        for (auto& [key, hp] : entry_point) {
            if (key.first != e) continue;
            if (crossing_pv.count(hp)) cuts.push_back(key.second);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<rational> bounds;
        bounds.push_back(0);
        bounds.insert(bounds.end(), cuts.begin(), cuts.end());
        bounds.push_back(npieces.at(e));
        auto pv_at = [&](const rational& gp) -> int {
            if (gp == 0) return pv_of.at(ed.u);
            if (gp == npieces.at(e)) return pv_of.at(ed.v);
            return crossing_pv.at(entry_point.at({e, gp}));
        };
        std::vector<trail_step> steps;
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
            int s = (int)d.segs.size();
            d.segs.push_back({pv_at(bounds[i]), pv_at(bounds[i + 1])});
            seg_pos.push_back({e, bounds[i], bounds[i + 1]});
            steps.push_back({s, false});
        }
        d.trails[e] = steps;
    }

    // clockwise rotations from exact directions
    int V = (int)d.verts.size();
    std::vector<std::vector<std::pair<int, point>>> incid(V);
    for (int s = 0; s < (int)d.segs.size(); ++s) {
        const std::vector<point>& pts = p.curve.at(seg_pos[s].edge);
        incid[d.segs[s].pu].push_back({2 * s, dir_at(pts, seg_pos[s].g0, false)});
        incid[d.segs[s].pv].push_back({2 * s + 1, dir_at(pts, seg_pos[s].g1, true)});
    }
    d.rot.assign(V, {});
    for (int v = 0; v < V; ++v) {
        auto& inc = incid[v];
        std::sort(inc.begin(), inc.end(), [](const auto& x, const auto& y) {
            if (ccw_dir_less(x.second, y.second)) return true;
            if (ccw_dir_less(y.second, x.second)) return false;
            return x.first < y.first;
        });
        for (size_t i = 0; i < inc.size(); ++i)
            for (size_t j = i + 1; j < inc.size(); ++j)
                if (!ccw_dir_less(inc[i].second, inc[j].second) &&
                    !ccw_dir_less(inc[j].second, inc[i].second))
                    throw invalid_input("ingest: coincident directions at a point");
        std::reverse(inc.begin(), inc.end());  // counterclockwise -> clockwise
        for (auto& [dart, dirv] : inc) d.rot[v].push_back(dart);
    }

    d.outer = 0;
    d.finalize();
    if (d.face_count() == 1) return d;  // tree-like: the only face is outer

    // the outer face is the unique orbit traced clockwise (negative signed area)
    int neg = -1;
    for (int f = 0; f < d.face_count(); ++f) {
        std::vector<point> poly;
        for (int dart : d.face_orbits[f]) {
            int s = dart / 2;
            const std::vector<point>& pts = p.curve.at(seg_pos[s].edge);
            using boost::multiprecision::denominator;
            using boost::multiprecision::numerator;
            rational g0 = seg_pos[s].g0, g1 = seg_pos[s].g1;
            std::vector<point> sub;
            sub.push_back(point_at(pts, g0));
            for (long j = floor_nonneg(g0) + 1; rational(j) < g1; ++j) sub.push_back(pts[j]);
            sub.push_back(point_at(pts, g1));
            if (dart & 1) std::reverse(sub.begin(), sub.end());
            for (size_t i = 0; i + 1 < sub.size(); ++i) poly.push_back(sub[i]);
        }
        if (poly.empty()) continue;
        if (signed_area2(poly) < 0) {
            if (neg != -1) throw invalid_input("ingest: ambiguous outer face");
            neg = f;
        }
    }
    if (neg == -1) throw invalid_input("ingest: no clockwise face orbit");
    d.outer = neg;
    return d;
}

PolylineDrawing circle_drawing(const Multigraph& g, const std::vector<int>& order) {
    if (g.vertex_count() == 0) throw invalid_input("circle_drawing: empty graph");
    std::vector<int> vs = g.vertices();
    if (order.size() != vs.size() ||
        std::set<int>(order.begin(), order.end()) != std::set<int>(vs.begin(), vs.end()))
        throw invalid_input("circle_drawing: order must be a permutation of the vertices");
    if (!g.is_connected()) throw invalid_input("circle_drawing: graph must be connected");

    int n = (int)order.size();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        long den = 999983L + 7919L * attempt;
        std::vector<point> ring;
        {
            // same tan-half-angle construction as unit_circle_points; retries
            // jitter each half-angle a little so symmetric configurations
            // (three concurrent main diagonals, diameter chords) break apart
            // while every point stays exactly on the circle
            for (int k = 0; k < n; ++k) {
                if (attempt == 0 && 2 * k == n) {
                    ring.push_back({-1, 0});
                    continue;
                }
                double th = M_PI * k / n + attempt * (k + 1) * 1e-5;
                rational t = rational_near(std::tan(th), den);
                rational t2 = t * t;
                ring.push_back({(1 - t2) / (1 + t2), (2 * t) / (1 + t2)});
            }
        }
        PolylineDrawing pd;
        pd.graph = g;
        for (int k = 0; k < n; ++k) pd.position[order[k]] = ring[k];

        // group parallel copies so later ones get nested detours
        std::map<std::pair<int, int>, int> copy_count;
        bool bad = false;
        for (const Edge& ed : g.edges()) {
            point P = pd.position.at(ed.u);
            point Q = pd.position.at(ed.v);
            if (ed.is_loop()) {
                int j = copy_count[{ed.u, ed.v}]++;
                point T{-P.y, P.x};
                // fan of thin outward lobes: copy j tilts by j/4 toward T and the
                // half-width 1/64 keeps the cones at P pairwise disjoint
                point dir = P + T * rational(j, 4);
                point apex = P + dir * rational(1, 6);
                pd.curve[ed.id] = {P, apex - T * rational(1, 64), apex + T * rational(1, 64),
                                   P};
                continue;
            }
            std::pair<int, int> key{std::min(ed.u, ed.v), std::max(ed.u, ed.v)};
            int j = copy_count[key]++;
            if (j == 0) {
                pd.curve[ed.id] = {P, Q};
                continue;
            }
            point m = (P + Q) * rational(1, 2);
            point nrm{-(Q.y - P.y), Q.x - P.x};
            rational toward_center = nrm.x * (-m.x) + nrm.y * (-m.y);
            if (toward_center < 0) nrm = {-nrm.x, -nrm.y};
            if (toward_center == 0) {
                bad = true;  // diameter chord: bump direction ambiguous, perturb
                break;
            }
            pd.curve[ed.id] = {P, m + nrm * rational(j, 16), Q};
        }
        if (bad) continue;

        try {
            PlanarizedDrawing d = ingest_polylines(pd);
            bool concurrency = false;
            for (int v = 0; v < (int)d.verts.size(); ++v)
                if (d.verts[v].kind == pv_kind::crossing && d.rot[v].size() > 4)
                    concurrency = true;
            if (concurrency) continue;
            return pd;
        } catch (const invalid_input&) {
            continue;  // degenerate position; advance the schedule
        }
    }
    throw error("circle_drawing: perturbation schedule exhausted");
}

}  // namespace facetint
