#include "facetint/drawing.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace facetint {

int PlanarizedDrawing::rotation_next(int d) const {
    const std::vector<int>& r = rot[origin(d)];
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] == d) return r[(i + 1) % r.size()];
    throw invalid_input("dart missing from its rotation");
}

std::vector<int> PlanarizedDrawing::trail_vertices(int edge_id) const {
    const std::vector<trail_step>& t = trails.at(edge_id);
    std::vector<int> out;
    out.push_back(step_from(t.front()));
    for (const trail_step& s : t) out.push_back(step_to(s));
    return out;
}

void PlanarizedDrawing::finalize() {
    int V = (int)verts.size();
    int E = (int)segs.size();
    int D = 2 * E;

    if (V == 0) throw invalid_input("planarized drawing: no vertices");
    if ((int)rot.size() != V) throw invalid_input("planarized drawing: rotation table size");

    for (const segment& s : segs)
        if (s.pu < 0 || s.pu >= V || s.pv < 0 || s.pv >= V)
            throw invalid_input("planarized drawing: segment endpoint out of range");

    std::vector<char> seen(D, 0);
    for (int v = 0; v < V; ++v) {
        for (int d : rot[v]) {
            if (d < 0 || d >= D) throw invalid_input("planarized drawing: dart out of range");
            if (seen[d]) throw invalid_input("planarized drawing: dart listed twice");
            if (origin(d) != v) throw invalid_input("planarized drawing: dart in wrong rotation");
            seen[d] = 1;
        }
    }
    for (int d = 0; d < D; ++d)
        if (!seen[d]) throw invalid_input("planarized drawing: dart missing from rotations");

    // canonical cyclic form: each rotation starts at its minimal dart
    for (int v = 0; v < V; ++v) {
        if (rot[v].empty()) continue;
        auto mn = std::min_element(rot[v].begin(), rot[v].end());
        std::rotate(rot[v].begin(), mn, rot[v].end());
    }

    pv_of_vertex.clear();
    for (int v = 0; v < V; ++v) {
        const planar_vertex& pv = verts[v];
        if (pv.kind == pv_kind::normal) {
            if (!underlying.has_vertex(pv.orig))
                throw invalid_input("planarized drawing: unknown original vertex");
            if (pv_of_vertex.count(pv.orig))
                throw invalid_input("planarized drawing: original vertex drawn twice");
            pv_of_vertex[pv.orig] = v;
        } else if (pv.orig != -1) {
            throw invalid_input("planarized drawing: crossing with original id");
        }
    }
    for (int gv : underlying.vertices())
        if (!pv_of_vertex.count(gv))
            throw invalid_input("planarized drawing: original vertex not drawn");

    // trails: cover every segment once, chain correctly, cross only at crossings
    std::vector<char> seg_used(E, 0);
    std::vector<char> dart_inner(D, 0);  // dart consumed by a pass through a crossing
    for (const Edge& ed : underlying.edges()) {
        auto it = trails.find(ed.id);
        if (it == trails.end()) throw invalid_input("planarized drawing: edge without trail");
        const std::vector<trail_step>& t = it->second;
        if (t.empty()) throw invalid_input("planarized drawing: empty trail");
        if (step_from(t.front()) != pv_of_vertex.at(ed.u))
            throw invalid_input("planarized drawing: trail does not start at tail");
        if (step_to(t.back()) != pv_of_vertex.at(ed.v))
            throw invalid_input("planarized drawing: trail does not end at head");
        for (size_t i = 0; i < t.size(); ++i) {
            int s = t[i].seg;
            if (s < 0 || s >= E) throw invalid_input("planarized drawing: trail segment range");
            if (seg_used[s]) throw invalid_input("planarized drawing: segment in two trails");
            seg_used[s] = 1;
            if (i + 1 < t.size()) {
                int x = step_to(t[i]);
                if (x != step_from(t[i + 1]))
                    throw invalid_input("planarized drawing: broken trail chain");
                if (verts[x].kind != pv_kind::crossing)
                    throw invalid_input("planarized drawing: trail passes a normal vertex");
                int din = step_end_dart(t[i]);
                int dout = step_start_dart(t[i + 1]);
                if (dart_inner[din] || dart_inner[dout])
                    throw invalid_input("planarized drawing: crossing dart used twice");
                dart_inner[din] = dart_inner[dout] = 1;
            }
        }
    }
    if ((size_t)underlying.edge_count() != trails.size())
        throw invalid_input("planarized drawing: trail for unknown edge");
    for (int s = 0; s < E; ++s)
        if (!seg_used[s]) throw invalid_input("planarized drawing: segment outside all trails");

    for (int v = 0; v < V; ++v) {
        if (verts[v].kind == pv_kind::crossing) {
            size_t deg = rot[v].size();
            if (deg < 4 || deg % 2 != 0)
                throw invalid_input("planarized drawing: crossing degree must be even and >= 4");
            for (int d : rot[v])
                if (!dart_inner[d])
                    throw invalid_input("planarized drawing: crossing dart not on a through pass");
        } else {
            if ((int)rot[v].size() != underlying.degree(verts[v].orig))
                throw invalid_input("planarized drawing: vertex degree mismatch");
        }
    }

    // connectivity of the planarization
    {
        std::vector<char> vis(V, 0);
        std::vector<int> stack = {0};
        vis[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : rot[v]) {
                int w = origin(twin(d));
                if (!vis[w]) {
                    vis[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        if (cnt != V) throw invalid_input("planarized drawing: planarization is disconnected");
    }

    // face orbits under successor = rotation-next of twin
    face_orbits.clear();
    face_of_dart.assign(D, -1);
    for (int d = 0; d < D; ++d) {
        if (face_of_dart[d] != -1) continue;
        std::vector<int> orbit;
        int cur = d;
        while (face_of_dart[cur] == -1) {
            face_of_dart[cur] = (int)face_orbits.size();
            orbit.push_back(cur);
            cur = face_successor(cur);
        }
        if (cur != d) throw invalid_input("planarized drawing: malformed face orbit");
        face_orbits.push_back(std::move(orbit));
    }
    if (D == 0) face_orbits.push_back({});  // single-vertex drawing: the whole plane

    int F = (int)face_orbits.size();
    if (V - E + F != 2)
        throw invalid_input("planarized drawing: Euler's formula fails, not a plane map");
    if (outer < 0 || outer >= F)
        throw invalid_input("planarized drawing: outer face out of range");
}

std::vector<crossing_pass> passes_through(const PlanarizedDrawing& d, int x) {
    std::vector<crossing_pass> out;
    for (const Edge& ed : d.underlying.edges()) {
        const std::vector<trail_step>& t = d.trails.at(ed.id);
        for (size_t i = 0; i + 1 < t.size(); ++i) {
            if (d.step_to(t[i]) != x) continue;
            out.push_back({ed.id, (int)i + 1, PlanarizedDrawing::step_end_dart(t[i]),
                           PlanarizedDrawing::step_start_dart(t[i + 1])});
        }
    }
    return out;
}

Multigraph dual(const PlanarizedDrawing& d) {
    Multigraph g;
    for (int f = 0; f < d.face_count(); ++f) g.add_vertex(f);
    for (int s = 0; s < (int)d.segs.size(); ++s)
        g.add_edge(s, d.face_of_dart[2 * s], d.face_of_dart[2 * s + 1]);
    return g;
}

Multigraph planarization_graph(const PlanarizedDrawing& d) {
    Multigraph g;
    for (int v = 0; v < (int)d.verts.size(); ++v) g.add_vertex(v);
    for (int s = 0; s < (int)d.segs.size(); ++s) g.add_edge(s, d.segs[s].pu, d.segs[s].pv);
    return g;
}

const char* violation_name(violation_kind k) {
    switch (k) {
        case violation_kind::multi_crossing: return "MULTI_CROSSING";
        case violation_kind::self_intersection: return "SELF_INTERSECTION";
        case violation_kind::loop_crossing: return "LOOP_CROSSING";
        case violation_kind::adjacent_crossing: return "ADJACENT_CROSSING";
        case violation_kind::double_crossing: return "DOUBLE_CROSSING";
        case violation_kind::touching: return "TOUCHING";
    }
    return "?";
}

std::vector<violation> find_violations(const PlanarizedDrawing& d) {
    std::vector<violation> out;

    std::vector<int> crossings;
    for (int v = 0; v < (int)d.verts.size(); ++v)
        if (d.verts[v].kind == pv_kind::crossing) crossings.push_back(v);

    for (int x : crossings)
        if (d.rot[x].size() != 4) out.push_back({violation_kind::multi_crossing, -1, -1, x});

    for (const Edge& ed : d.underlying.edges()) {
        std::vector<int> inner;
        const std::vector<trail_step>& t = d.trails.at(ed.id);
        for (size_t i = 0; i + 1 < t.size(); ++i) inner.push_back(d.step_to(t[i]));
        std::set<int> dup_done;
        for (size_t i = 0; i < inner.size(); ++i)
            for (size_t j = i + 1; j < inner.size(); ++j)
                if (inner[i] == inner[j] && dup_done.insert(inner[i]).second)
                    out.push_back({violation_kind::self_intersection, ed.id, -1, inner[i]});
    }

    // pairs of distinct edges meeting at crossings
    std::vector<violation> loops, adjacents;
    std::map<std::pair<int, int>, std::vector<int>> indep_meets;
    std::map<std::pair<int, int>, std::pair<crossing_pass, crossing_pass>> indep_first;
    for (int x : crossings) {
        std::vector<crossing_pass> ps = passes_through(d, x);
        for (size_t i = 0; i < ps.size(); ++i) {
            for (size_t j = i + 1; j < ps.size(); ++j) {
                int a = ps[i].edge, b = ps[j].edge;
                if (a == b) continue;  // self-intersection, already recorded
                if (a > b) std::swap(a, b);
                const Edge& ea = d.underlying.edge(a);
                const Edge& eb = d.underlying.edge(b);
                if (ea.is_loop() || eb.is_loop()) {
                    int le = ea.is_loop() ? a : b;
                    int oe = ea.is_loop() ? b : a;
                    loops.push_back({violation_kind::loop_crossing, le, oe, x});
                } else if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v) {
                    adjacents.push_back({violation_kind::adjacent_crossing, a, b, x});
                } else {
                    auto key = std::make_pair(a, b);
                    if (!indep_meets.count(key)) indep_first[key] = {ps[i], ps[j]};
                    indep_meets[key].push_back(x);
                }
            }
        }
    }
    out.insert(out.end(), loops.begin(), loops.end());
    out.insert(out.end(), adjacents.begin(), adjacents.end());

    std::vector<violation> doubles, touchings;
    for (auto& [key, xs] : indep_meets) {
        if (xs.size() >= 2) {
            doubles.push_back({violation_kind::double_crossing, key.first, key.second, xs[0]});
        } else {
            int x = xs[0];
            if (d.rot[x].size() != 4) continue;  // multi-crossing dominates
            auto& [p, q] = indep_first[key];
            (void)q;
            int pos_in = -1, pos_out = -1;
            for (int k = 0; k < 4; ++k) {
                if (d.rot[x][k] == p.in_dart) pos_in = k;
                if (d.rot[x][k] == p.out_dart) pos_out = k;
            }
            if ((pos_in + 2) % 4 != pos_out)
                touchings.push_back({violation_kind::touching, key.first, key.second, x});
        }
    }
    out.insert(out.end(), doubles.begin(), doubles.end());
    out.insert(out.end(), touchings.begin(), touchings.end());
    return out;
}

std::pair<bool, std::vector<violation>> is_good_drawing(const PlanarizedDrawing& d) {
    std::vector<violation> v = find_violations(d);
    return {v.empty(), v};
}

long crossing_triples(const PlanarizedDrawing& d) {
    long total = 0;
    for (int v = 0; v < (int)d.verts.size(); ++v) {
        if (d.verts[v].kind != pv_kind::crossing) continue;
        long t = (long)d.rot[v].size() / 2;
        total += t * (t - 1) / 2;
    }
    return total;
}

std::pair<PlanarizedDrawing, Multigraph> place_vertex_at_crossing(const PlanarizedDrawing& d,
                                                                 int x) {
    if (x < 0 || x >= (int)d.verts.size() || d.verts[x].kind != pv_kind::crossing)
        throw invalid_input("place_vertex_at_crossing: not a crossing vertex");
    if (d.rot[x].size() != 4)
        throw invalid_input("place_vertex_at_crossing: crossing must be 4-valent");

    std::vector<int> vs = d.underlying.vertices();
    int nv = *std::max_element(vs.begin(), vs.end()) + 1;
    int next_edge = 0;
    for (const Edge& ed : d.underlying.edges()) next_edge = std::max(next_edge, ed.id + 1);

    Multigraph g;
    for (int v : vs) g.add_vertex(v);
    g.add_vertex(nv);

    std::map<int, std::vector<trail_step>> new_trails;
    for (const Edge& ed : d.underlying.edges()) {
        const std::vector<trail_step>& t = d.trails.at(ed.id);
        std::vector<std::vector<trail_step>> pieces;
        std::vector<trail_step> cur;
        for (size_t i = 0; i < t.size(); ++i) {
            cur.push_back(t[i]);
            if (i + 1 < t.size() && d.step_to(t[i]) == x) {
                pieces.push_back(cur);
                cur.clear();
            }
        }
        pieces.push_back(cur);
        if (pieces.size() == 1) {
            g.add_edge(ed.id, ed.u, ed.v);
            new_trails[ed.id] = t;
            continue;
        }
        for (size_t k = 0; k < pieces.size(); ++k) {
            int from = k == 0 ? ed.u : nv;
            int to = k + 1 == pieces.size() ? ed.v : nv;
            int id = next_edge++;
            g.add_edge(id, from, to);
            new_trails[id] = pieces[k];
        }
    }

    PlanarizedDrawing nd;
    nd.underlying = g;
    nd.verts = d.verts;
    nd.verts[x] = {pv_kind::normal, nv};
    nd.segs = d.segs;
    nd.rot = d.rot;
    nd.trails = std::move(new_trails);
    nd.outer = d.outer;
    nd.finalize();
    return {nd, g};
}

PlanarizedDrawing make_plane_drawing(
    const Multigraph& g, const std::map<int, std::vector<std::pair<int, int>>>& rotations,
    int outer_face) {
    std::map<int, int> seg_of_edge;
    for (const Edge& ed : g.edges()) {
        int i = (int)seg_of_edge.size();
        seg_of_edge[ed.id] = i;
    }
    std::vector<int> vs = g.vertices();
    std::map<int, int> pv_of;
    for (size_t i = 0; i < vs.size(); ++i) pv_of[vs[i]] = (int)i;

    PlanarizedDrawing d;
    d.underlying = g;
    for (int v : vs) d.verts.push_back({pv_kind::normal, v});
    for (const Edge& ed : g.edges()) d.segs.push_back({pv_of.at(ed.u), pv_of.at(ed.v)});
    d.rot.assign(vs.size(), {});
    for (auto& [v, tokens] : rotations) {
        if (!pv_of.count(v)) throw invalid_input("make_plane_drawing: unknown vertex");
        for (auto& [e, end] : tokens) {
            if (!seg_of_edge.count(e) || (end != 0 && end != 1))
                throw invalid_input("make_plane_drawing: bad rotation token");
            d.rot[pv_of.at(v)].push_back(2 * seg_of_edge.at(e) + end);
        }
    }
    for (const Edge& ed : g.edges()) d.trails[ed.id] = {{seg_of_edge.at(ed.id), false}};
    d.outer = outer_face;
    d.finalize();
    return d;
}

std::optional<PlanarizedDrawing> find_planar_embedding(const Multigraph& g, long guard) {
    if (!g.is_connected()) return std::nullopt;
    std::vector<int> vs = g.vertices();
    int E = g.edge_count();
    if (E == 0) {
        std::map<int, std::vector<std::pair<int, int>>> r;
        return make_plane_drawing(g, r, 0);
    }
    std::vector<int> es;
    std::map<int, int> seg_of_edge;
    for (const Edge& ed : g.edges()) {
        seg_of_edge[ed.id] = (int)es.size();
        es.push_back(ed.id);
    }

    // dart tokens per vertex
    std::vector<std::vector<int>> tokens(vs.size());
    for (size_t vi = 0; vi < vs.size(); ++vi) {
        for (int e : g.incident_edges(vs[vi])) {
            const Edge& ed = g.edge(e);
            if (ed.is_loop()) {
                tokens[vi].push_back(2 * seg_of_edge.at(e));
                tokens[vi].push_back(2 * seg_of_edge.at(e) + 1);
            } else if (ed.u == vs[vi]) {
                tokens[vi].push_back(2 * seg_of_edge.at(e));
            } else {
                tokens[vi].push_back(2 * seg_of_edge.at(e) + 1);
            }
        }
        std::sort(tokens[vi].begin(), tokens[vi].end());
    }

    long work = 1;
    for (auto& t : tokens) {
        long f = 1;
        for (size_t k = 2; k < t.size(); ++k) {
            f *= (long)k;
            if (f > guard) throw guard_exceeded("find_planar_embedding: search space too large");
        }
        work *= std::max(f, 1L);
        if (work > guard) throw guard_exceeded("find_planar_embedding: search space too large");
    }

    int D = 2 * E;
    std::vector<int> rot_next(D), face_tag(D);
    std::function<bool(size_t)> rec = [&](size_t vi) -> bool {
        if (vi == vs.size()) {
            for (auto& t : tokens)
                for (size_t k = 0; k < t.size(); ++k) rot_next[t[k]] = t[(k + 1) % t.size()];
            std::fill(face_tag.begin(), face_tag.end(), -1);
            int F = 0;
            for (int d0 = 0; d0 < D; ++d0) {
                if (face_tag[d0] != -1) continue;
                int cur = d0;
                while (face_tag[cur] == -1) {
                    face_tag[cur] = F;
                    cur = rot_next[cur ^ 1];
                }
                ++F;
            }
            return (int)vs.size() - E + F == 2;
        }
        std::vector<int>& t = tokens[vi];
        if (t.size() <= 2) return rec(vi + 1);
        std::sort(t.begin() + 1, t.end());
        do {
            if (rec(vi + 1)) return true;
        } while (std::next_permutation(t.begin() + 1, t.end()));
        std::sort(t.begin() + 1, t.end());
        return false;
    };
    if (!rec(0)) return std::nullopt;

    std::map<int, std::vector<std::pair<int, int>>> rotations;
    for (size_t vi = 0; vi < vs.size(); ++vi) {
        for (int dtoken : tokens[vi]) rotations[vs[vi]].push_back({es[dtoken / 2], dtoken & 1});
    }
    return make_plane_drawing(g, rotations, 0);
}

std::string canonical_map_string(const PlanarizedDrawing& d) {
    int D = d.dart_count();
    if (D == 0) {
        std::ostringstream os;
        os << "K1:" << d.verts[0].orig;
        return os.str();
    }

    std::vector<int> partner(D, -1);
    for (const Edge& ed : d.underlying.edges()) {
        const std::vector<trail_step>& t = d.trails.at(ed.id);
        for (size_t i = 0; i + 1 < t.size(); ++i) {
            int din = PlanarizedDrawing::step_end_dart(t[i]);
            int dout = PlanarizedDrawing::step_start_dart(t[i + 1]);
            partner[din] = dout;
            partner[dout] = din;
        }
    }
    std::vector<int> edge_of_seg((size_t)D / 2, -1);
    for (auto& [e, t] : d.trails)
        for (const trail_step& s : t) edge_of_seg[s.seg] = e;

    std::string best;
    for (int start = 0; start < D; ++start) {
        std::vector<int> label(D, -1), order;
        order.reserve(D);
        label[start] = 0;
        order.push_back(start);
        for (size_t qi = 0; qi < order.size(); ++qi) {
            int cur = order[qi];
            for (int nb : {d.rotation_next(cur), d.twin(cur)}) {
                if (label[nb] == -1) {
                    label[nb] = (int)order.size();
                    order.push_back(nb);
                }
            }
        }
        std::ostringstream os;
        for (int od : order) {
            const planar_vertex& pv = d.verts[d.origin(od)];
            os << label[d.rotation_next(od)] << ',' << label[d.twin(od)] << ','
               << (partner[od] == -1 ? -1 : label[partner[od]]) << ','
               << (pv.kind == pv_kind::normal ? pv.orig : -2) << ',' << edge_of_seg[od / 2]
               << ';';
        }
        int outer_mark = D;
        for (int od : d.face_orbits[d.outer]) outer_mark = std::min(outer_mark, label[od]);
        os << "outer:" << outer_mark;
        std::string s = os.str();
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

}  // namespace facetint
