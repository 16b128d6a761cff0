#include "facetint/io.hpp"

#include <map>
#include <set>
#include <sstream>

namespace facetint {

namespace {

struct record {
    int line;
    std::vector<std::string> tok;
};

std::vector<record> tokenize(const std::string& text) {
    std::vector<record> out;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        record r{ln, {}};
        std::string t;
        while (ls >> t) r.tok.push_back(t);
        if (!r.tok.empty()) out.push_back(r);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw invalid_input("line " + std::to_string(line) + ": " + msg);
}

long parse_long(const record& r, const std::string& t) {
    size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) fail(r.line, "expected an integer, got '" + t + "'");
    for (size_t j = i; j < t.size(); ++j)
        if (!isdigit((unsigned char)t[j])) fail(r.line, "expected an integer, got '" + t + "'");
    try {
        return std::stol(t);
    } catch (const std::exception&) {
        fail(r.line, "integer out of range: '" + t + "'");
    }
}

int parse_int(const record& r, const std::string& t) { return (int)parse_long(r, t); }

void expect_arity(const record& r, size_t n) {
    if (r.tok.size() != n)
        fail(r.line, "'" + r.tok[0] + "' record takes " + std::to_string(n - 1) + " fields");
}

boost::multiprecision::cpp_int parse_bigint(const record& r, const std::string& t) {
    size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) fail(r.line, "expected an integer, got '" + t + "'");
    for (size_t j = i; j < t.size(); ++j)
        if (!isdigit((unsigned char)t[j])) fail(r.line, "bad rational component '" + t + "'");
    return boost::multiprecision::cpp_int(t);
}

rational parse_rational(const record& r, const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return rational(parse_bigint(r, t));
    boost::multiprecision::cpp_int num = parse_bigint(r, t.substr(0, slash));
    boost::multiprecision::cpp_int den = parse_bigint(r, t.substr(slash + 1));
    if (den <= 0) fail(r.line, "rational denominator must be positive in '" + t + "'");
    return rational(num, den);
}

std::string rat_str(const rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

point parse_point_token(const record& r, const std::string& t) {
    auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
        fail(r.line, "expected 'x,y', got '" + t + "'");
    return {parse_rational(r, t.substr(0, comma)), parse_rational(r, t.substr(comma + 1))};
}

}  // namespace

Multigraph parse_graph(const std::string& text) {
    std::vector<record> recs = tokenize(text);
    Multigraph g;
    for (const record& r : recs) {
        if (r.tok[0] == "v") {
            expect_arity(r, 2);
            try {
                g.add_vertex(parse_int(r, r.tok[1]));
            } catch (const invalid_input& e) {
                fail(r.line, e.what());
            }
        } else if (r.tok[0] != "e") {
            fail(r.line, "unknown record '" + r.tok[0] + "'");
        }
    }
    for (const record& r : recs) {
        if (r.tok[0] != "e") continue;
        expect_arity(r, 4);
        try {
            g.add_edge(parse_int(r, r.tok[1]), parse_int(r, r.tok[2]), parse_int(r, r.tok[3]));
        } catch (const invalid_input& e) {
            fail(r.line, e.what());
        }
    }
    return g;
}

std::string serialize_graph(const Multigraph& g) {
    std::string out;
    for (int v : g.vertices()) out += "v " + std::to_string(v) + "\n";
    for (const Edge& e : g.edges())
        out += "e " + std::to_string(e.id) + " " + std::to_string(e.u) + " " +
               std::to_string(e.v) + "\n";
    return out;
}

namespace {

// shared scan for .or files; flow values collected when present
Orientation parse_arcs(const std::string& text, const Multigraph& g, std::map<int, int>* values) {
    Orientation o;
    o.graph = g;
    for (const record& r : tokenize(text)) {
        if (r.tok[0] == "a") {
            expect_arity(r, 4);
            int id = parse_int(r, r.tok[1]);
            if (!g.has_edge(id)) fail(r.line, "unknown edge " + std::to_string(id));
            const Edge& e = g.edge(id);
            int tail = parse_int(r, r.tok[2]), head = parse_int(r, r.tok[3]);
            if (o.forward.count(id)) fail(r.line, "edge " + std::to_string(id) + " oriented twice");
            if (tail == e.u && head == e.v)
                o.forward[id] = true;
            else if (tail == e.v && head == e.u)
                o.forward[id] = false;
            else
                fail(r.line, "arc endpoints do not match edge " + std::to_string(id));
        } else if (r.tok[0] == "f") {
            expect_arity(r, 3);
            int id = parse_int(r, r.tok[1]);
            if (!g.has_edge(id)) fail(r.line, "unknown edge " + std::to_string(id));
            int val = parse_int(r, r.tok[2]);
            if (val != 1 && val != 2) fail(r.line, "flow value must be 1 or 2");
            if (values) {
                if (values->count(id)) fail(r.line, "edge " + std::to_string(id) + " valued twice");
                (*values)[id] = val;
            }
        } else {
            fail(r.line, "unknown record '" + r.tok[0] + "'");
        }
    }
    for (const Edge& e : g.edges())
        if (!o.forward.count(e.id))
            throw invalid_input("edge " + std::to_string(e.id) + " has no arc");
    return o;
}

}  // namespace

Orientation parse_orientation(const std::string& text, const Multigraph& g) {
    return parse_arcs(text, g, nullptr);
}

std::string serialize_orientation(const Orientation& o) {
    std::string out;
    for (const Edge& e : o.graph.edges())
        out += "a " + std::to_string(e.id) + " " + std::to_string(o.tail(e.id)) + " " +
               std::to_string(o.head(e.id)) + "\n";
    return out;
}

Z3Flow parse_flow(const std::string& text, const Multigraph& g) {
    Z3Flow f;
    f.orientation = parse_arcs(text, g, &f.value);
    for (const Edge& e : g.edges())
        if (!f.value.count(e.id))
            throw invalid_input("edge " + std::to_string(e.id) + " has no flow value");
    return f;
}

std::string serialize_flow(const Z3Flow& f) {
    std::string out = serialize_orientation(f.orientation);
    for (const Edge& e : f.orientation.graph.edges())
        out += "f " + std::to_string(e.id) + " " + std::to_string(f.value.at(e.id)) + "\n";
    return out;
}

PolylineDrawing parse_poly(const std::string& text) {
    std::vector<record> recs = tokenize(text);
    PolylineDrawing p;
    for (const record& r : recs) {
        if (r.tok[0] == "v") {
            expect_arity(r, 4);
            int id = parse_int(r, r.tok[1]);
            try {
                p.graph.add_vertex(id);
            } catch (const invalid_input& e) {
                fail(r.line, e.what());
            }
            p.position[id] = {parse_rational(r, r.tok[2]), parse_rational(r, r.tok[3])};
        } else if (r.tok[0] != "e") {
            fail(r.line, "unknown record '" + r.tok[0] + "'");
        }
    }
    for (const record& r : recs) {
        if (r.tok[0] != "e") continue;
        if (r.tok.size() < 7 || r.tok[4] != ":")
            fail(r.line, "'e' record needs id, endpoints, ':', and at least two points");
        int id = parse_int(r, r.tok[1]);
        try {
            p.graph.add_edge(id, parse_int(r, r.tok[2]), parse_int(r, r.tok[3]));
        } catch (const invalid_input& e) {
            fail(r.line, e.what());
        }
        for (size_t i = 5; i < r.tok.size(); ++i)
            p.curve[id].push_back(parse_point_token(r, r.tok[i]));
    }
    return p;
}

std::string serialize_poly(const PolylineDrawing& p) {
    std::string out;
    for (int v : p.graph.vertices()) {
        auto it = p.position.find(v);
        if (it == p.position.end())
            throw invalid_input("vertex " + std::to_string(v) + " has no position");
        out += "v " + std::to_string(v) + " " + rat_str(it->second.x) + " " +
               rat_str(it->second.y) + "\n";
    }
    for (const Edge& e : p.graph.edges()) {
        auto it = p.curve.find(e.id);
        if (it == p.curve.end())
            throw invalid_input("edge " + std::to_string(e.id) + " has no curve");
        out += "e " + std::to_string(e.id) + " " + std::to_string(e.u) + " " +
               std::to_string(e.v) + " :";
        for (const point& pt : it->second) out += " " + rat_str(pt.x) + "," + rat_str(pt.y);
        out += "\n";
    }
    return out;
}

PlanarizedDrawing parse_cmap(const std::string& text) {
    std::vector<record> recs = tokenize(text);
    std::map<int, planar_vertex> pvs;
    std::map<int, segment> segs;
    std::map<int, std::vector<int>> rots;
    std::map<int, std::vector<trail_step>> trails;
    std::optional<int> outer;

    for (const record& r : recs) {
        if (r.tok[0] == "pv") {
            if (r.tok.size() < 3) fail(r.line, "'pv' record needs id and kind");
            int id = parse_int(r, r.tok[1]);
            if (pvs.count(id)) fail(r.line, "duplicate planar vertex " + std::to_string(id));
            if (r.tok[2] == "normal") {
                expect_arity(r, 4);
                pvs[id] = {pv_kind::normal, parse_int(r, r.tok[3])};
            } else if (r.tok[2] == "crossing") {
                expect_arity(r, 3);
                pvs[id] = {pv_kind::crossing, -1};
            } else {
                fail(r.line, "planar vertex kind must be 'normal' or 'crossing'");
            }
        } else if (r.tok[0] == "seg") {
            expect_arity(r, 4);
            int id = parse_int(r, r.tok[1]);
            if (segs.count(id)) fail(r.line, "duplicate segment " + std::to_string(id));
            segs[id] = {parse_int(r, r.tok[2]), parse_int(r, r.tok[3])};
        } else if (r.tok[0] == "rot") {
            if (r.tok.size() < 2) fail(r.line, "'rot' record needs a planar vertex");
            int id = parse_int(r, r.tok[1]);
            if (rots.count(id)) fail(r.line, "duplicate rotation for " + std::to_string(id));
            std::vector<int> darts;
            for (size_t i = 2; i < r.tok.size(); ++i) darts.push_back(parse_int(r, r.tok[i]));
            rots[id] = darts;
        } else if (r.tok[0] == "trail") {
            if (r.tok.size() < 3) fail(r.line, "'trail' record needs an edge and tokens");
            int id = parse_int(r, r.tok[1]);
            if (trails.count(id)) fail(r.line, "duplicate trail for edge " + std::to_string(id));
            std::vector<trail_step> steps;
            for (size_t i = 2; i < r.tok.size(); ++i) {
                long t = parse_long(r, r.tok[i]);
                if (t == 0) fail(r.line, "trail tokens are signed 1-based segment numbers");
                steps.push_back({(int)(std::abs(t) - 1), t < 0});
            }
            trails[id] = steps;
        } else if (r.tok[0] == "outer") {
            expect_arity(r, 2);
            if (outer) fail(r.line, "'outer' given twice");
            outer = parse_int(r, r.tok[1]);
        } else {
            fail(r.line, "unknown record '" + r.tok[0] + "'");
        }
    }

    PlanarizedDrawing d;
    for (auto& [id, pv] : pvs) {
        if (id != (int)d.verts.size())
            throw invalid_input("planar vertex ids must be dense from 0");
        d.verts.push_back(pv);
    }
    for (auto& [id, s] : segs) {
        if (id != (int)d.segs.size()) throw invalid_input("segment ids must be dense from 0");
        if (s.pu < 0 || s.pu >= (int)d.verts.size() || s.pv < 0 || s.pv >= (int)d.verts.size())
            throw invalid_input("segment " + std::to_string(id) + " ends at unknown vertex");
        d.segs.push_back(s);
    }
    d.rot.resize(d.verts.size());
    for (auto& [id, darts] : rots) {
        if (id < 0 || id >= (int)d.verts.size())
            throw invalid_input("rotation for unknown planar vertex " + std::to_string(id));
        d.rot[id] = darts;
    }
    for (int v = 0; v < (int)d.verts.size(); ++v)
        if (!rots.count(v))
            throw invalid_input("planar vertex " + std::to_string(v) + " has no rotation");

    // the abstract graph is implicit: origins of normal vertices, one edge
    // per trail running between the origins of its endpoints
    for (const auto& pv : pvs)
        if (pv.second.kind == pv_kind::normal) {
            if (d.underlying.has_vertex(pv.second.orig))
                throw invalid_input("origin vertex " + std::to_string(pv.second.orig) +
                                    " appears twice");
            d.underlying.add_vertex(pv.second.orig);
        }
    for (auto& [eid, steps] : trails) {
        for (const trail_step& st : steps)
            if (st.seg >= (int)d.segs.size())
                throw invalid_input("trail of edge " + std::to_string(eid) +
                                    " uses an unknown segment");
        int from = steps.front().rev ? d.segs[steps.front().seg].pv : d.segs[steps.front().seg].pu;
        int to = steps.back().rev ? d.segs[steps.back().seg].pu : d.segs[steps.back().seg].pv;
        if (d.verts[from].kind != pv_kind::normal || d.verts[to].kind != pv_kind::normal)
            throw invalid_input("trail of edge " + std::to_string(eid) +
                                " must run between normal planar vertices");
        d.underlying.add_edge(eid, d.verts[from].orig, d.verts[to].orig);
        d.trails[eid] = steps;
    }
    if (!outer) throw invalid_input("no 'outer' record");
    d.outer = *outer;
    d.finalize();
    return d;
}

std::string serialize_cmap(const PlanarizedDrawing& d) {
    std::string out;
    for (int v = 0; v < (int)d.verts.size(); ++v) {
        out += "pv " + std::to_string(v);
        if (d.verts[v].kind == pv_kind::normal)
            out += " normal " + std::to_string(d.verts[v].orig);
        else
            out += " crossing";
        out += "\n";
    }
    for (int s = 0; s < (int)d.segs.size(); ++s)
        out += "seg " + std::to_string(s) + " " + std::to_string(d.segs[s].pu) + " " +
               std::to_string(d.segs[s].pv) + "\n";
    for (int v = 0; v < (int)d.verts.size(); ++v) {
        out += "rot " + std::to_string(v);
        for (int dart : d.rot[v]) out += " " + std::to_string(dart);
        out += "\n";
    }
    for (auto& [eid, steps] : d.trails) {
        out += "trail " + std::to_string(eid);
        for (const trail_step& st : steps)
            out += " " + std::to_string(st.rev ? -(st.seg + 1) : st.seg + 1);
        out += "\n";
    }
    out += "outer " + std::to_string(d.outer) + "\n";
    return out;
}

FaceColoring parse_fc(const std::string& text) {
    std::optional<int> k;
    std::map<int, int> colors;
    for (const record& r : tokenize(text)) {
        if (r.tok[0] == "k") {
            expect_arity(r, 2);
            if (k) fail(r.line, "'k' given twice");
            k = parse_int(r, r.tok[1]);
            if (*k < 1) fail(r.line, "k must be positive");
        } else if (r.tok[0] == "f") {
            expect_arity(r, 3);
            int id = parse_int(r, r.tok[1]);
            if (colors.count(id)) fail(r.line, "face " + std::to_string(id) + " colored twice");
            colors[id] = parse_int(r, r.tok[2]);
        } else {
            fail(r.line, "unknown record '" + r.tok[0] + "'");
        }
    }
    if (!k) throw invalid_input("no 'k' record");
    FaceColoring c;
    c.k = *k;
    for (auto& [id, col] : colors) {
        if (id != (int)c.color.size()) throw invalid_input("face ids must be dense from 0");
        if (col < 0 || col >= c.k)
            throw invalid_input("face " + std::to_string(id) + " color out of range");
        c.color.push_back(col);
    }
    return c;
}

std::string serialize_fc(const FaceColoring& c) {
    std::string out = "k " + std::to_string(c.k) + "\n";
    for (int f = 0; f < (int)c.color.size(); ++f)
        out += "f " + std::to_string(f) + " " + std::to_string(c.color[f]) + "\n";
    return out;
}

}  // namespace facetint
