#include "facetint/normalize.hpp"

#include "facetint/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>

namespace facetint {

namespace {

void require_finalized(const PlanarizedDrawing& d) {
    if ((int)d.face_of_dart.size() != d.dart_count() || d.face_orbits.empty())
        throw invalid_input("surgery: drawing must be finalized");
}

std::vector<trail_step> reversed_steps(std::vector<trail_step> t) {
    std::reverse(t.begin(), t.end());
    for (trail_step& s : t) s.rev = !s.rev;
    return t;
}

// a pass alternates when its two darts sit opposite each other in the
// 4-valent rotation; otherwise the site is a touching
bool passes_alternate(const PlanarizedDrawing& d, int x, const crossing_pass& p) {
    const std::vector<int>& r = d.rot[x];
    if (r.size() != 4) throw error("passes_alternate: site is not 4-valent");
    int pin = -1, pout = -1;
    for (int k = 0; k < 4; ++k) {
        if (r[k] == p.in_dart) pin = k;
        if (r[k] == p.out_dart) pout = k;
    }
    if (pin < 0 || pout < 0) throw error("passes_alternate: pass darts not at the site");
    return (pin + 2) % 4 == pout;
}

void fill_measures(SurgeryStep& st, const PlanarizedDrawing& before,
                   const PlanarizedDrawing& after) {
    st.triples_before = crossing_triples(before);
    st.triples_after = crossing_triples(after);
    st.touchings_before = (int)touching_sites(before).size();
    st.touchings_after = (int)touching_sites(after).size();
}

// Chain fusion over the drawing's darts plus an optional grafted micro
// structure. Segment ids 0..S_old-1 are the input's, micro segments follow
// with offset S_old; dart ids double accordingly. Sutures glue pairs of darts
// whose planar vertices dissolve, and every glued run becomes one segment of
// the rebuilt drawing. Trails that need micro pieces spliced in arrive as
// ready-made walks in `items`; an entry with an empty walk means the caller
// installs that trail itself afterwards.
struct fuse_input {
    const PlanarizedDrawing* before = nullptr;
    const PlanarizedDrawing* micro = nullptr;
    std::set<int> dead_pvs;
    std::set<int> removed_segs;
    std::set<int> micro_live_segs;
    std::map<int, int> suture;
    std::map<int, std::vector<trail_step>> items;
};

struct fuse_output {
    PlanarizedDrawing out;  // not finalized, outer unset
    std::vector<int> new_pv_of_old;
    std::vector<int> new_pv_of_micro;
    // for each kept input segment: its chain and whether the chain covers it
    // against its own orientation; {-1, 0} for erased segments
    std::vector<std::array<int, 2>> chain_of_old_seg;
    std::map<int, std::vector<trail_step>> cover;  // new seg -> walk of input segs
};

fuse_output fuse(const fuse_input& in) {
    const PlanarizedDrawing& d = *in.before;
    const int s_old = (int)d.segs.size();
    const int s_mic = in.micro ? (int)in.micro->segs.size() : 0;
    const int us_count = s_old + s_mic;

    fuse_output r;
    r.out.underlying = d.underlying;

    r.new_pv_of_old.assign(d.verts.size(), -1);
    for (int p = 0; p < (int)d.verts.size(); ++p) {
        if (in.dead_pvs.count(p)) continue;
        r.new_pv_of_old[p] = (int)r.out.verts.size();
        r.out.verts.push_back(d.verts[p]);
    }
    if (in.micro) {
        r.new_pv_of_micro.assign(in.micro->verts.size(), -1);
        for (int p = 0; p < (int)in.micro->verts.size(); ++p) {
            if (in.micro->verts[p].kind != pv_kind::crossing) continue;
            r.new_pv_of_micro[p] = (int)r.out.verts.size();
            r.out.verts.push_back({pv_kind::crossing, -1});
        }
    }

    auto alive = [&](int us) {
        return us < s_old ? !in.removed_segs.count(us)
                          : in.micro_live_segs.count(us - s_old) != 0;
    };
    auto new_origin = [&](int ud) {
        int us = ud / 2;
        if (us < s_old) return r.new_pv_of_old[d.origin(ud)];
        return r.new_pv_of_micro[in.micro->origin(ud - 2 * s_old)];
    };

    std::vector<char> used(us_count, 0);
    std::vector<std::array<int, 2>> chain_of(us_count, {-1, 0});
    std::map<int, int> end_dart;  // chain-end universe dart -> new dart
    r.chain_of_old_seg.assign(s_old, {-1, 0});

    for (int ud = 0; ud < 2 * us_count; ++ud) {
        if (!alive(ud / 2) || used[ud / 2] || in.suture.count(ud)) continue;
        int id = (int)r.out.segs.size();
        int cur = ud, last = ud;
        std::vector<trail_step> old_walk;
        while (true) {
            int s = cur / 2;
            if (used[s]) throw error("fuse: segment fused twice");
            used[s] = 1;
            bool rev = (cur & 1) != 0;
            chain_of[s] = {id, rev ? 1 : 0};
            if (s < s_old) old_walk.push_back({s, rev});
            last = cur ^ 1;
            auto it = in.suture.find(last);
            if (it == in.suture.end()) break;
            cur = it->second;
        }
        end_dart[ud] = 2 * id;
        end_dart[last] = 2 * id + 1;
        int a = new_origin(ud), b = new_origin(last);
        if (a < 0 || b < 0) throw error("fuse: chain ends at a dissolved vertex");
        r.out.segs.push_back({a, b});
        r.cover[id] = std::move(old_walk);
    }
    // a closed chain would need a run of closed segments glued all around,
    // which trails anchored at normal vertices cannot produce
    for (int us = 0; us < us_count; ++us)
        if (alive(us) && !used[us]) throw error("fuse: closed fusion chain");
    for (int s = 0; s < s_old; ++s)
        if (alive(s)) r.chain_of_old_seg[s] = chain_of[s];

    r.out.rot.assign(r.out.verts.size(), {});
    for (int p = 0; p < (int)d.verts.size(); ++p) {
        if (in.dead_pvs.count(p)) continue;
        for (int od : d.rot[p]) {
            if (!alive(od / 2)) continue;
            auto it = end_dart.find(od);
            if (it == end_dart.end()) throw error("fuse: glued dart at a kept vertex");
            r.out.rot[r.new_pv_of_old[p]].push_back(it->second);
        }
    }
    if (in.micro) {
        for (int p = 0; p < (int)in.micro->verts.size(); ++p) {
            if (r.new_pv_of_micro[p] == -1) continue;
            for (int md : in.micro->rot[p]) {
                int ud = 2 * s_old + md;
                if (!alive(ud / 2)) continue;
                auto it = end_dart.find(ud);
                if (it == end_dart.end()) throw error("fuse: glued dart at a micro crossing");
                r.out.rot[r.new_pv_of_micro[p]].push_back(it->second);
            }
        }
    }

    for (const Edge& ed : d.underlying.edges()) {
        const std::vector<trail_step>* src;
        auto it = in.items.find(ed.id);
        if (it != in.items.end()) {
            if (it->second.empty()) continue;
            src = &it->second;
        } else {
            src = &d.trails.at(ed.id);
        }
        std::vector<trail_step> nt;
        for (const trail_step& st : *src) {
            auto [cid, cdir] = chain_of[st.seg];
            if (cid < 0) throw error("fuse: trail step on a removed segment");
            trail_step ns{cid, st.rev != (cdir != 0)};
            if (!nt.empty() && nt.back().seg == ns.seg) {
                if (!(nt.back() == ns)) throw error("fuse: fusion direction clash along a trail");
                continue;
            }
            nt.push_back(ns);
        }
        r.out.trails[ed.id] = std::move(nt);
    }
    return r;
}

// Each kept input segment pins the face on either of its sides to the face on
// the matching side of its chain; the pins must agree, since faces only merge.
std::vector<int> derive_face_map(const PlanarizedDrawing& before, const PlanarizedDrawing& after,
                                 const std::vector<std::array<int, 2>>& chain_of_old_seg) {
    std::vector<int> fmap(before.face_orbits.size(), -1);
    for (int s = 0; s < (int)chain_of_old_seg.size(); ++s) {
        auto [c, dir] = chain_of_old_seg[s];
        if (c < 0) continue;
        for (int side = 0; side < 2; ++side) {
            int of = before.face_of_dart[2 * s + side];
            int nf = after.face_of_dart[2 * c + (side ^ dir)];
            if (fmap[of] == -1) fmap[of] = nf;
            else if (fmap[of] != nf) throw error("surgery: face map inconsistent");
        }
    }
    return fmap;
}

// faces bounded only by erased segments follow the merges across those
// segments until a pinned face appears
int resolve_face(const PlanarizedDrawing& before, const std::vector<int>& fmap,
                 const std::set<int>& removed_segs, int f) {
    if (fmap[f] != -1) return fmap[f];
    std::set<int> seen = {f};
    std::vector<int> q = {f};
    for (size_t qi = 0; qi < q.size(); ++qi) {
        for (int s : removed_segs) {
            int a = before.face_of_dart[2 * s], b = before.face_of_dart[2 * s + 1];
            int nb;
            if (a == q[qi]) nb = b;
            else if (b == q[qi]) nb = a;
            else continue;
            if (!seen.insert(nb).second) continue;
            if (fmap[nb] != -1) return fmap[nb];
            q.push_back(nb);
        }
    }
    throw error("surgery: face image not found");
}

// face orbits straight out of segments and rotations, before finalize
std::vector<std::vector<int>> trace_orbits(const std::vector<segment>& segs,
                                           const std::vector<std::vector<int>>& rot) {
    int dc = 2 * (int)segs.size();
    std::vector<int> next_in_rot(dc, -1);
    for (const std::vector<int>& r : rot)
        for (size_t i = 0; i < r.size(); ++i) next_in_rot[r[i]] = r[(i + 1) % r.size()];
    std::vector<std::vector<int>> orbits;
    std::vector<char> seen(dc, 0);
    for (int d0 = 0; d0 < dc; ++d0) {
        if (seen[d0]) continue;
        std::vector<int> orb;
        int cur = d0;
        while (!seen[cur]) {
            seen[cur] = 1;
            orb.push_back(cur);
            cur = next_in_rot[cur ^ 1];
            if (cur < 0) throw error("trace_orbits: dart missing from rotations");
        }
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

// Straight chords of a jittered circle, one per pass, with position j on the
// ring taken clockwise so the boundary order matches the site's rotation. A
// scaffold cycle through the ring keeps the ingested graph connected; convex
// position keeps it out of the chords' way. Retries perturb the ring until
// every chord crossing is plain 4-valent.
PlanarizedDrawing build_chord_arrangement(int two_t, const std::vector<std::pair<int, int>>& chords) {
    Multigraph g;
    for (int j = 0; j < two_t; ++j) g.add_vertex(j);
    for (int j = 0; j < two_t; ++j) g.add_edge(j, j, (j + 1) % two_t);
    for (size_t i = 0; i < chords.size(); ++i)
        g.add_edge(two_t + (int)i, chords[i].first, chords[i].second);

    for (int attempt = 0; attempt < 1000; ++attempt) {
        long den = 999983L + 7919L * attempt;
        std::vector<point> ring(two_t);
        for (int k = 0; k < two_t; ++k) {
            double th = M_PI * k / two_t + attempt * (k + 1) * 1e-5;
            rational t = rational_near(std::tan(th), den);
            rational t2 = t * t;
            ring[(two_t - k) % two_t] = {(1 - t2) / (1 + t2), (2 * t) / (1 + t2)};
        }
        PolylineDrawing pd;
        pd.graph = g;
        for (int j = 0; j < two_t; ++j) pd.position[j] = ring[j];
        for (int j = 0; j < two_t; ++j) pd.curve[j] = {ring[j], ring[(j + 1) % two_t]};
        for (size_t i = 0; i < chords.size(); ++i) {
            point pp = ring[chords[i].first], qq = ring[chords[i].second];
            int gap = (chords[i].second - chords[i].first + two_t) % two_t;
            if (gap == 1 || gap == two_t - 1) {
                // a chord between ring neighbors would coincide with the
                // scaffold edge; bow it outward into the cap next to the arc,
                // which no straight chord can enter
                point m = (pp + qq) * rational(1, 2);
                rational u = m.x * m.x + m.y * m.y;
                pd.curve[two_t + (int)i] = {pp, m * ((4 - u) / 3), qq};
            } else {
                pd.curve[two_t + (int)i] = {pp, qq};
            }
        }
        PlanarizedDrawing micro;
        try {
            micro = ingest_polylines(pd);
        } catch (const invalid_input&) {
            continue;
        }
        bool clean = true;
        for (int j = 0; j < two_t && clean; ++j)
            if (micro.trails.at(j).size() != 1) clean = false;  // scaffold must stay clear
        std::map<std::pair<int, int>, int> meets;
        for (int p = 0; p < (int)micro.verts.size() && clean; ++p) {
            if (micro.verts[p].kind != pv_kind::crossing) continue;
            if (micro.rot[p].size() != 4) { clean = false; break; }
            std::vector<crossing_pass> ps = passes_through(micro, p);
            if (ps.size() != 2 || ps[0].edge == ps[1].edge || ps[0].edge < two_t ||
                ps[1].edge < two_t) {
                clean = false;
                break;
            }
            if (++meets[{std::min(ps[0].edge, ps[1].edge), std::max(ps[0].edge, ps[1].edge)}] > 1)
                clean = false;  // a chord pair may cross at most once
        }
        if (clean) return micro;
    }
    throw error("split_multicrossing: no clean chord arrangement found");
}

int require_4valent_crossing(const PlanarizedDrawing& d, int site, const char* who) {
    if (site < 0 || site >= (int)d.verts.size() || d.verts[site].kind != pv_kind::crossing)
        throw invalid_input(std::string(who) + ": not a crossing vertex");
    if (d.rot[site].size() != 4)
        throw invalid_input(std::string(who) + ": crossing must be 4-valent");
    return site;
}

}  // namespace

const char* surgery_op_name(surgery_op op) {
    switch (op) {
        case surgery_op::split_multicrossing: return "split_multicrossing";
        case surgery_op::remove_touching: return "remove_touching";
        case surgery_op::reroute_self_intersection: return "reroute_self_intersection";
        case surgery_op::uncross_adjacent: return "uncross_adjacent";
        case surgery_op::uncross_double: return "uncross_double";
        case surgery_op::isolate_loop: return "isolate_loop";
    }
    return "?";
}

std::vector<int> touching_sites(const PlanarizedDrawing& d) {
    std::vector<int> out;
    for (int x = 0; x < (int)d.verts.size(); ++x) {
        if (d.verts[x].kind != pv_kind::crossing || d.rot[x].size() != 4) continue;
        std::vector<crossing_pass> ps = passes_through(d, x);
        if (ps.size() == 2 && !passes_alternate(d, x, ps[0])) out.push_back(x);
    }
    return out;
}

SurgeryOutcome split_multicrossing(const PlanarizedDrawing& d, int site) {
    require_finalized(d);
    if (site < 0 || site >= (int)d.verts.size() || d.verts[site].kind != pv_kind::crossing)
        throw invalid_input("split_multicrossing: not a crossing vertex");
    std::vector<crossing_pass> ps = passes_through(d, site);
    int t = (int)ps.size();
    if (t < 3) throw invalid_input("split_multicrossing: need at least three passes");
    int s_old = (int)d.segs.size();

    std::map<int, int> pos_of;
    for (int k = 0; k < (int)d.rot[site].size(); ++k) pos_of[d.rot[site][k]] = k;
    std::vector<std::pair<int, int>> chords;
    for (const crossing_pass& p : ps)
        chords.push_back({pos_of.at(p.in_dart), pos_of.at(p.out_dart)});

    PlanarizedDrawing micro = build_chord_arrangement(2 * t, chords);

    fuse_input fi;
    fi.before = &d;
    fi.micro = &micro;
    fi.dead_pvs = {site};
    for (int i = 0; i < t; ++i) {
        const std::vector<trail_step>& mt = micro.trails.at(2 * t + i);
        for (const trail_step& ms : mt) fi.micro_live_segs.insert(ms.seg);
        int mstart = 2 * s_old + PlanarizedDrawing::step_start_dart(mt.front());
        int mend = 2 * s_old + PlanarizedDrawing::step_end_dart(mt.back());
        fi.suture[ps[i].in_dart] = mstart;
        fi.suture[mstart] = ps[i].in_dart;
        fi.suture[ps[i].out_dart] = mend;
        fi.suture[mend] = ps[i].out_dart;
    }
    for (const Edge& ed : d.underlying.edges()) {
        const std::vector<trail_step>& told = d.trails.at(ed.id);
        bool here = false;
        for (size_t k = 0; k + 1 < told.size(); ++k)
            if (d.step_to(told[k]) == site) here = true;
        if (!here) continue;
        std::vector<trail_step> items;
        for (size_t k = 0; k < told.size(); ++k) {
            items.push_back(told[k]);
            if (k + 1 == told.size() || d.step_to(told[k]) != site) continue;
            int pi = -1;
            for (int i = 0; i < t; ++i)
                if (ps[i].edge == ed.id && ps[i].step_after == (int)k + 1) pi = i;
            if (pi < 0) throw error("split_multicrossing: pass not found for a visit");
            for (const trail_step& ms : micro.trails.at(2 * t + pi))
                items.push_back({ms.seg + s_old, ms.rev});
        }
        fi.items[ed.id] = std::move(items);
    }

    fuse_output fo = fuse(fi);
    fo.out.outer = 0;
    fo.out.finalize();
    std::vector<int> fmap = derive_face_map(d, fo.out, fo.chain_of_old_seg);
    fo.out.outer = fmap.at(d.outer);

    SurgeryStep st;
    st.op = surgery_op::split_multicrossing;
    st.site = site;
    st.transfer = SurgeryStep::transfer_kind::face_preimage;
    st.face_map = std::move(fmap);
    fill_measures(st, d, fo.out);
    if (st.triples_after > st.triples_before) throw error("split_multicrossing: triples grew");
    if (st.touchings_after != st.touchings_before)
        throw error("split_multicrossing: touchings changed");
    return {std::move(fo.out), std::move(st)};
}

SurgeryOutcome remove_touching(const PlanarizedDrawing& d, int site) {
    require_finalized(d);
    require_4valent_crossing(d, site, "remove_touching");
    std::vector<crossing_pass> ps = passes_through(d, site);
    if (ps.size() != 2) throw error("remove_touching: 4-valent crossing without two passes");
    if (passes_alternate(d, site, ps[0]))
        throw invalid_input("remove_touching: passes alternate, site is a proper crossing");

    fuse_input fi;
    fi.before = &d;
    fi.dead_pvs = {site};
    for (const crossing_pass& p : ps) {
        fi.suture[p.in_dart] = p.out_dart;
        fi.suture[p.out_dart] = p.in_dart;
    }
    fuse_output fo = fuse(fi);
    fo.out.outer = 0;
    fo.out.finalize();
    std::vector<int> fmap = derive_face_map(d, fo.out, fo.chain_of_old_seg);
    fo.out.outer = fmap.at(d.outer);

    SurgeryStep st;
    st.op = surgery_op::remove_touching;
    st.site = site;
    st.e1 = ps[0].edge;
    st.e2 = ps[1].edge;
    st.transfer = SurgeryStep::transfer_kind::face_preimage;
    st.face_map = std::move(fmap);
    fill_measures(st, d, fo.out);
    if (st.triples_after != st.triples_before - 1)
        throw error("remove_touching: triple count did not drop by one");
    return {std::move(fo.out), std::move(st)};
}

SurgeryOutcome reroute_self_intersection(const PlanarizedDrawing& d, int site) {
    require_finalized(d);
    require_4valent_crossing(d, site, "reroute_self_intersection");
    std::vector<crossing_pass> ps = passes_through(d, site);
    if (ps.size() != 2 || ps[0].edge != ps[1].edge)
        throw invalid_input("reroute_self_intersection: site is not a self-intersection");
    if (!passes_alternate(d, site, ps[0]))
        throw invalid_input("reroute_self_intersection: site is already a touching");

    PlanarizedDrawing nd = d;
    std::vector<trail_step>& t = nd.trails.at(ps[0].edge);
    int a = ps[0].step_after, b = ps[1].step_after;
    // the closed sub-walk between the two visits, reversed in place
    std::reverse(t.begin() + a, t.begin() + b);
    for (int i = a; i < b; ++i) t[i].rev = !t[i].rev;
    nd.finalize();

    SurgeryStep st;
    st.op = surgery_op::reroute_self_intersection;
    st.site = site;
    st.e1 = ps[0].edge;
    st.transfer = SurgeryStep::transfer_kind::identity;
    fill_measures(st, d, nd);
    if (st.triples_after != st.triples_before)
        throw error("reroute_self_intersection: triple count changed");
    if (passes_alternate(nd, site, passes_through(nd, site)[0]))
        throw error("reroute_self_intersection: site did not become a touching");
    return {std::move(nd), std::move(st)};
}

SurgeryOutcome uncross_adjacent(const PlanarizedDrawing& d, int site) {
    require_finalized(d);
    require_4valent_crossing(d, site, "uncross_adjacent");
    std::vector<crossing_pass> ps = passes_through(d, site);
    if (ps.size() != 2 || ps[0].edge == ps[1].edge)
        throw invalid_input("uncross_adjacent: need two passes of distinct edges");
    const Edge& ea = d.underlying.edge(ps[0].edge);
    const Edge& eb = d.underlying.edge(ps[1].edge);
    if (ea.is_loop() || eb.is_loop())
        throw invalid_input("uncross_adjacent: loops are handled by loop isolation");
    int v = -1;
    for (int w : {ea.u, ea.v})
        if (w == eb.u || w == eb.v) v = (v == -1) ? w : std::min(v, w);
    if (v == -1) throw invalid_input("uncross_adjacent: edges share no endpoint");
    if (!passes_alternate(d, site, ps[0]))
        throw invalid_input("uncross_adjacent: site is already a touching");

    bool flip1 = ea.u != v, flip2 = eb.u != v;
    std::vector<trail_step> t1 = d.trails.at(ea.id);
    std::vector<trail_step> t2 = d.trails.at(eb.id);
    if (flip1) t1 = reversed_steps(t1);
    if (flip2) t2 = reversed_steps(t2);
    auto visit_at = [&](const std::vector<trail_step>& t) {
        int at = -1, n = 0;
        for (size_t i = 0; i + 1 < t.size(); ++i)
            if (d.step_to(t[i]) == site) { at = (int)i; ++n; }
        if (n != 1) throw error("uncross_adjacent: edge must visit the site exactly once");
        return at;
    };
    int i = visit_at(t1), j = visit_at(t2);
    // swap the shared-endpoint sides of the two trails at the site
    std::vector<trail_step> n1(t2.begin(), t2.begin() + j + 1);
    n1.insert(n1.end(), t1.begin() + i + 1, t1.end());
    std::vector<trail_step> n2(t1.begin(), t1.begin() + i + 1);
    n2.insert(n2.end(), t2.begin() + j + 1, t2.end());

    PlanarizedDrawing nd = d;
    nd.trails[ea.id] = flip1 ? reversed_steps(n1) : n1;
    nd.trails[eb.id] = flip2 ? reversed_steps(n2) : n2;
    nd.finalize();

    SurgeryStep st;
    st.op = surgery_op::uncross_adjacent;
    st.site = site;
    st.e1 = ea.id;
    st.e2 = eb.id;
    st.transfer = SurgeryStep::transfer_kind::identity;
    fill_measures(st, d, nd);
    if (st.triples_after != st.triples_before)
        throw error("uncross_adjacent: triple count changed");
    if (passes_alternate(nd, site, passes_through(nd, site)[0]))
        throw error("uncross_adjacent: site did not become a touching");
    return {std::move(nd), std::move(st)};
}

SurgeryOutcome uncross_double(const PlanarizedDrawing& d, int e1, int e2) {
    require_finalized(d);
    if (!d.underlying.has_edge(e1) || !d.underlying.has_edge(e2) || e1 == e2)
        throw invalid_input("uncross_double: need two distinct edges");
    const Edge& ea = d.underlying.edge(e1);
    const Edge& eb = d.underlying.edge(e2);
    if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v)
        throw invalid_input("uncross_double: edges share an endpoint");

    std::vector<trail_step> t1 = d.trails.at(e1);
    std::vector<trail_step> t2 = d.trails.at(e2);
    // the first two shared plain crossings along e1's trail
    std::vector<std::pair<int, int>> hits;  // (index into t1, site)
    for (size_t i = 0; i + 1 < t1.size() && hits.size() < 2; ++i) {
        int x = d.step_to(t1[i]);
        if (d.verts[x].kind != pv_kind::crossing || d.rot[x].size() != 4) continue;
        std::vector<crossing_pass> ps = passes_through(d, x);
        if (ps.size() != 2) continue;
        if ((ps[0].edge == e1 && ps[1].edge == e2) || (ps[0].edge == e2 && ps[1].edge == e1)) {
            if (!passes_alternate(d, x, ps[0]))
                throw invalid_input("uncross_double: shared site is a touching");
            hits.push_back({(int)i, x});
        }
    }
    if (hits.size() < 2)
        throw invalid_input("uncross_double: edges do not cross twice");
    auto [i1, x1] = hits[0];
    auto [i2, x2] = hits[1];
    auto visit_of = [&](int x) {
        int at = -1, n = 0;
        for (size_t j = 0; j + 1 < t2.size(); ++j)
            if (d.step_to(t2[j]) == x) { at = (int)j; ++n; }
        if (n != 1) throw error("uncross_double: second edge must visit the site once");
        return at;
    };
    int j1 = visit_of(x1), j2 = visit_of(x2);
    int ja = std::min(j1, j2), jb = std::max(j1, j2);
    bool same_order = j1 < j2;  // e2 reaches x1 first too

    std::vector<trail_step> m1(t1.begin() + i1 + 1, t1.begin() + i2 + 1);
    std::vector<trail_step> m2(t2.begin() + ja + 1, t2.begin() + jb + 1);
    if (!same_order) {
        m1 = reversed_steps(m1);
        m2 = reversed_steps(m2);
    }
    std::vector<trail_step> n1(t1.begin(), t1.begin() + i1 + 1);
    n1.insert(n1.end(), m2.begin(), m2.end());
    n1.insert(n1.end(), t1.begin() + i2 + 1, t1.end());
    std::vector<trail_step> n2(t2.begin(), t2.begin() + ja + 1);
    n2.insert(n2.end(), m1.begin(), m1.end());
    n2.insert(n2.end(), t2.begin() + jb + 1, t2.end());

    PlanarizedDrawing nd = d;
    nd.trails[e1] = std::move(n1);
    nd.trails[e2] = std::move(n2);
    nd.finalize();

    SurgeryStep st;
    st.op = surgery_op::uncross_double;
    st.site = x1;
    st.e1 = e1;
    st.e2 = e2;
    st.transfer = SurgeryStep::transfer_kind::identity;
    fill_measures(st, d, nd);
    if (st.triples_after != st.triples_before)
        throw error("uncross_double: triple count changed");
    for (int x : {x1, x2})
        if (passes_alternate(nd, x, passes_through(nd, x)[0]))
            throw error("uncross_double: site did not become a touching");
    return {std::move(nd), std::move(st)};
}

SurgeryOutcome isolate_loop(const PlanarizedDrawing& d, int edge_id) {
    require_finalized(d);
    if (!d.underlying.has_edge(edge_id)) throw invalid_input("isolate_loop: unknown edge");
    const Edge& le = d.underlying.edge(edge_id);
    if (!le.is_loop()) throw invalid_input("isolate_loop: edge is not a loop");
    const std::vector<trail_step> te = d.trails.at(edge_id);

    std::set<int> visited;
    for (size_t i = 0; i + 1 < te.size(); ++i) visited.insert(d.step_to(te[i]));

    fuse_input fi;
    fi.before = &d;
    bool crosses_other = false;
    for (int x : visited) {
        std::vector<crossing_pass> others;
        for (const crossing_pass& p : passes_through(d, x))
            if (p.edge != edge_id) others.push_back(p);
        if (!others.empty()) crosses_other = true;
        if (others.empty()) {
            fi.dead_pvs.insert(x);
        } else if (others.size() == 1) {
            // a lone remaining pass smooths straight through
            fi.dead_pvs.insert(x);
            fi.suture[others[0].in_dart] = others[0].out_dart;
            fi.suture[others[0].out_dart] = others[0].in_dart;
        }
    }
    if (!crosses_other)
        throw invalid_input("isolate_loop: the loop does not cross any other trail");

    for (const trail_step& s : te) fi.removed_segs.insert(s.seg);
    fi.items[edge_id] = {};

    fuse_output fo = fuse(fi);

    int vp = fo.new_pv_of_old[d.pv_of_vertex.at(le.u)];
    if (vp < 0 || fo.out.rot[vp].empty())
        throw invalid_input("isolate_loop: loop vertex has no other attachment");

    // the incident face with the largest boundary orbit takes the lobe
    std::vector<std::vector<int>> orbits = trace_orbits(fo.out.segs, fo.out.rot);
    auto origin_of = [&](int dd) {
        const segment& s = fo.out.segs[dd / 2];
        return (dd & 1) ? s.pv : s.pu;
    };
    int best = -1, corner = -1;
    for (int f = 0; f < (int)orbits.size(); ++f) {
        int at = -1;
        for (int dd : orbits[f])
            if (origin_of(dd) == vp) { at = dd; break; }
        if (at == -1) continue;
        if (best == -1 || orbits[f].size() > orbits[best].size()) {
            best = f;
            corner = at;
        }
    }
    if (best == -1) throw error("isolate_loop: no face at the loop vertex");

    int c = (int)fo.out.segs.size();
    fo.out.segs.push_back({vp, vp});
    std::vector<int>& rv = fo.out.rot[vp];
    rv.insert(std::find(rv.begin(), rv.end(), corner), {2 * c, 2 * c + 1});
    fo.out.trails[edge_id] = {{c, false}};

    fo.out.outer = 0;
    fo.out.finalize();
    std::vector<int> fmap = derive_face_map(d, fo.out, fo.chain_of_old_seg);
    fo.out.outer = resolve_face(d, fmap, fi.removed_segs, d.outer);

    SurgeryStep st;
    st.op = surgery_op::isolate_loop;
    st.e1 = edge_id;
    st.transfer = SurgeryStep::transfer_kind::reorient;
    st.cover = std::move(fo.cover);
    st.cover[c] = te;
    fill_measures(st, d, fo.out);
    if (st.triples_after >= st.triples_before)
        throw error("isolate_loop: crossing triples did not decrease");
    return {std::move(fo.out), std::move(st)};
}

NormalizeResult normalize(const PlanarizedDrawing& d) {
    require_finalized(d);
    NormalizeResult r;
    r.drawing = d;
    // every surgery either lowers the triple count or is followed by a
    // touching removal that does; splits only retire multi-crossings
    long budget = 3 * crossing_triples(d) + (long)touching_sites(d).size() +
                  (long)d.verts.size() + 10;
    while (true) {
        if ((long)r.steps.size() > budget) throw error("normalize: surgery budget exceeded");
        const PlanarizedDrawing& cur = r.drawing;
        std::optional<SurgeryOutcome> oc;
        for (int p = 0; p < (int)cur.verts.size() && !oc; ++p)
            if (cur.verts[p].kind == pv_kind::crossing && cur.rot[p].size() > 4)
                oc = split_multicrossing(cur, p);
        if (!oc) {
            std::vector<int> ts = touching_sites(cur);
            if (!ts.empty()) oc = remove_touching(cur, ts.front());
        }
        if (!oc) {
            std::vector<violation> vs = find_violations(cur);
            auto first_of = [&](violation_kind k) -> const violation* {
                for (const violation& v : vs)
                    if (v.kind == k) return &v;
                return nullptr;
            };
            if (const violation* v = first_of(violation_kind::self_intersection))
                oc = reroute_self_intersection(cur, v->pv);
            else if (const violation* v = first_of(violation_kind::loop_crossing))
                oc = isolate_loop(cur, v->e1);
            else if (const violation* v = first_of(violation_kind::adjacent_crossing))
                oc = uncross_adjacent(cur, v->pv);
            else if (const violation* v = first_of(violation_kind::double_crossing))
                oc = uncross_double(cur, v->e1, v->e2);
            else if (!vs.empty())
                throw error("normalize: unhandled violation kind survived");
        }
        if (!oc) break;
        r.before.push_back(r.drawing);
        r.steps.push_back(std::move(oc->step));
        r.drawing = std::move(oc->drawing);
    }
    if (!is_good_drawing(r.drawing).first) throw error("normalize: violations remain");
    if (!(r.drawing.underlying == d.underlying)) throw error("normalize: underlying graph changed");
    return r;
}

FaceColoring transfer_coloring(const NormalizeResult& r, const FaceColoring& c) {
    if (c.k != 3 || !check_coloring(r.drawing, c))
        throw invalid_input("transfer_coloring: need a proper 3-coloring of the result");
    FaceColoring cc = c;
    const PlanarizedDrawing* after = &r.drawing;
    for (int i = (int)r.steps.size() - 1; i >= 0; --i) {
        const SurgeryStep& st = r.steps[i];
        const PlanarizedDrawing& before = r.before[i];
        switch (st.transfer) {
            case SurgeryStep::transfer_kind::identity:
                break;  // same face structure on both sides
            case SurgeryStep::transfer_kind::face_preimage: {
                FaceColoring nc{3, std::vector<int>(before.face_orbits.size(), 0)};
                for (size_t f = 0; f < nc.color.size(); ++f)
                    nc.color[f] = cc.color.at(st.face_map.at(f));
                cc = std::move(nc);
                break;
            }
            case SurgeryStep::transfer_kind::reorient: {
                // carry the coloring as a modulo-3 orientation: each result
                // segment pushes its direction onto the run of input segments
                // its curve covers
                Orientation po = mod3_from_coloring(*after, cc);
                Orientation po_old;
                po_old.graph = planarization_graph(before);
                for (const auto& [ns, walk] : st.cover)
                    for (const trail_step& w : walk)
                        po_old.forward[w.seg] = (po.forward.at(ns) != w.rev);
                if ((int)po_old.forward.size() != (int)before.segs.size())
                    throw error("transfer_coloring: segment left unoriented");
                cc = coloring_from_mod3(before, po_old);
                break;
            }
        }
        if (!check_coloring(before, cc)) throw error("transfer_coloring: improper pull-back");
        after = &before;
    }
    return cc;
}

}  // namespace facetint
