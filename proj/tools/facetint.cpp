// facetint: drawings of multigraphs, face colorings, and nowhere-zero
// 3-flows from one binary. Every subcommand is a thin wrapper over the
// library; formats round-trip through the io module.
//
// Exit codes: 0 success (or YES / object exists), 1 definitive negative
// (no coloring, no flow, verdict NO), 2 usage error, 3 invalid input,
// 4 search guard exceeded. UNKNOWN verdicts exit 0: the run succeeded,
// the question stayed open.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "facetint/decide.hpp"
#include "facetint/drawing.hpp"
#include "facetint/facecolor.hpp"
#include "facetint/flow3.hpp"
#include "facetint/generators.hpp"
#include "facetint/io.hpp"
#include "facetint/normalize.hpp"

using namespace facetint;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path);
    out << content;
}

// FACETINT_GUARDS="subcontraction=20,minor=24,z3=12" overrides search limits
struct Guards {
    int subcontraction = 16;
    int minor = 20;
    int z3 = 10;
};

int to_int(const std::string& s) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("not an integer: " + s);
    }
}

Guards guards_from_env() {
    Guards g;
    const char* env = std::getenv("FACETINT_GUARDS");
    if (!env) return g;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw invalid_input("FACETINT_GUARDS entry without '=': " + item);
        std::string key = item.substr(0, eq);
        int val = 0;
        try {
            val = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw invalid_input("FACETINT_GUARDS value not a number: " + item);
        }
        if (val < 1) throw invalid_input("FACETINT_GUARDS value must be positive: " + item);
        if (key == "subcontraction") g.subcontraction = val;
        else if (key == "minor") g.minor = val;
        else if (key == "z3") g.z3 = val;
        else throw invalid_input("FACETINT_GUARDS unknown key: " + key);
    }
    return g;
}

json arcs_json(const Orientation& o) {
    json arcs = json::array();
    for (const Edge& e : o.graph.edges())
        arcs.push_back({e.id, o.tail(e.id), o.head(e.id)});
    return arcs;
}

json graph_json(const Multigraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.id, e.u, e.v});
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

json certificate_json(const Certificate& c) {
    if (auto* m = std::get_if<Mod3Certificate>(&c))
        return {{"kind", "mod3-orientation"}, {"arcs", arcs_json(m->orientation)}};
    if (auto* f = std::get_if<FourEdgeConnectedCertificate>(&c))
        return {{"kind", "four-edge-connected"}, {"checked_ceiling", f->checked_ceiling}};
    if (auto* b = std::get_if<CubicBipartiteCertificate>(&c)) {
        json j = {{"kind", "cubic-bipartite"}, {"odd_cycle", b->odd_cycle}};
        j["sides"] = b->sides ? json(*b->sides) : json(nullptr);
        return j;
    }
    if (std::get_if<SubcubicRefutationCertificate>(&c))
        return {{"kind", "subcubic-no-flow"}};
    if (auto* k = std::get_if<K33MinorFreeCertificate>(&c)) {
        json j = {{"kind", "k33-minor-free"}};
        j["orientation"] = k->orientation ? arcs_json(*k->orientation) : json(nullptr);
        return j;
    }
    if (auto* k3 = std::get_if<K3nPlusCertificate>(&c)) {
        json iso = json::array();
        for (auto [v, c2] : k3->iso) iso.push_back({v, c2});
        return {{"kind", "k3nplus"}, {"n", k3->n}, {"iso", iso}};
    }
    if (auto* br = std::get_if<BridgeCertificate>(&c))
        return {{"kind", "bridge"},
                {"edge", br->edge},
                {"side_x", br->side_x},
                {"side_y", br->side_y}};
    if (auto* l = std::get_if<LeafCertificate>(&c))
        return {{"kind", "leaf"}, {"vertex", l->vertex}};
    if (auto* s = std::get_if<SubcontractionCertificate>(&c))
        return {{"kind", "bad-subcontraction"},
                {"pattern", graph_json(s->pattern)},
                {"class_of", s->class_of}};
    return json(nullptr);
}

// --- svg/dot export ---

const char* kPalette[12] = {"#e6550d", "#3182bd", "#31a354", "#756bb1",
                            "#c51b8a", "#fd8d3c", "#6baed6", "#74c476",
                            "#9e9ac8", "#fa9fb5", "#fdd0a2", "#969696"};

// barycentric layout of the plane map: outer face boundary on a circle,
// the rest relaxed to neighbor averages
std::vector<std::pair<double, double>> layout(const PlanarizedDrawing& d) {
    int n = (int)d.verts.size();
    std::vector<std::pair<double, double>> pos(n, {0.0, 0.0});
    std::vector<bool> fixed(n, false);
    std::vector<int> ring;
    if (d.outer >= 0)
        for (int dart : d.face_orbits[d.outer]) {
            int v = d.origin(dart);
            if (!fixed[v]) {
                fixed[v] = true;
                ring.push_back(v);
            }
        }
    if (ring.empty())
        for (int v = 0; v < n; ++v) ring.push_back(v), fixed[v] = true;
    const double pi = 3.14159265358979323846;
    for (size_t i = 0; i < ring.size(); ++i) {
        double a = 2 * pi * (double)i / (double)ring.size();
        pos[ring[i]] = {std::cos(a), std::sin(a)};
    }
    if ((int)ring.size() == n) return pos;
    for (int iter = 0; iter < 400; ++iter)
        for (int v = 0; v < n; ++v) {
            if (fixed[v] || d.rot[v].empty()) continue;
            double x = 0, y = 0;
            for (int dart : d.rot[v]) {
                int w = d.origin(d.twin(dart));
                x += pos[w].first;
                y += pos[w].second;
            }
            pos[v] = {x / d.rot[v].size(), y / d.rot[v].size()};
        }
    return pos;
}

std::string svg_export(const PlanarizedDrawing& d, const FaceColoring* fc,
                       const Orientation* lifted) {
    auto pos = layout(d);
    const double S = 240, CX = 260, CY = 260;
    auto X = [&](int v) { return CX + S * pos[v].first; };
    auto Y = [&](int v) { return CY - S * pos[v].second; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" "
           "viewBox=\"0 0 520 520\">\n";
    if (fc && d.outer >= 0 && d.outer < (int)fc->color.size())
        out << "  <rect width=\"520\" height=\"520\" fill=\"" << kPalette[fc->color[d.outer] % 12]
            << "\" fill-opacity=\"0.25\"/>\n";
    for (int f = 0; f < d.face_count(); ++f) {
        if (f == d.outer) continue;
        out << "  <polygon points=\"";
        for (int dart : d.face_orbits[f])
            out << X(d.origin(dart)) << "," << Y(d.origin(dart)) << " ";
        out << "\" fill=\"" << (fc && f < (int)fc->color.size() ? kPalette[fc->color[f] % 12] : "none")
            << "\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
    }
    for (size_t s = 0; s < d.segs.size(); ++s) {
        double x1 = X(d.segs[s].pu), y1 = Y(d.segs[s].pu);
        double x2 = X(d.segs[s].pv), y2 = Y(d.segs[s].pv);
        out << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
            << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
        if (lifted && lifted->forward.count((int)s)) {
            if (!lifted->forward.at((int)s)) {
                std::swap(x1, x2);
                std::swap(y1, y2);
            }
            double mx = (x1 + x2) / 2, my = (y1 + y2) / 2;
            double dx = x2 - x1, dy = y2 - y1;
            double len = std::sqrt(dx * dx + dy * dy);
            if (len > 1e-9) {
                dx /= len, dy /= len;
                out << "  <polygon points=\"" << mx + 6 * dx << "," << my + 6 * dy << " "
                    << mx - 4 * dx + 4 * dy << "," << my - 4 * dy - 4 * dx << " "
                    << mx - 4 * dx - 4 * dy << "," << my - 4 * dy + 4 * dx
                    << "\" fill=\"#d62728\"/>\n";
            }
        }
    }
    for (size_t v = 0; v < d.verts.size(); ++v) {
        bool crossing = d.verts[v].kind == pv_kind::crossing;
        out << "  <circle cx=\"" << X((int)v) << "\" cy=\"" << Y((int)v) << "\" r=\""
            << (crossing ? 3 : 5) << "\" fill=\"" << (crossing ? "#fff" : "#000")
            << "\" stroke=\"#000\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string dot_export(const PlanarizedDrawing& d, const Orientation* o) {
    std::ostringstream out;
    const Multigraph& g = d.underlying;
    out << (o ? "digraph" : "graph") << " facetint {\n";
    for (int v : g.vertices()) out << "  " << v << ";\n";
    for (const Edge& e : g.edges()) {
        int u = e.u, v = e.v;
        if (o && !o->forward.at(e.id)) std::swap(u, v);
        out << "  " << u << (o ? " -> " : " -- ") << v << " [label=\"" << e.id << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

int dispatch(const std::string& cmd, CLI::App& app);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"face colorings of multigraph drawings and nowhere-zero 3-flows"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success or YES, 1 definitive negative, 2 usage, "
               "3 invalid input, 4 guard exceeded.\n"
               "FACETINT_GUARDS=subcontraction=N,minor=N,z3=N overrides search limits.");

    std::string in, out = "-", kind;
    std::vector<std::string> gen_args;
    int k = 3;
    bool json_flag = false, trace = false, orient = false;
    std::string coloring_path, orientation_path;

    auto* planarize = app.add_subcommand("planarize", "polyline drawing -> combinatorial map");
    planarize->add_option("input", in, ".poly file")->required();
    planarize->add_option("-o", out, "output .cmap (default stdout)");

    auto* faces = app.add_subcommand("faces", "list the faces of a map");
    faces->add_option("input", in, ".cmap file")->required();

    auto* dualc = app.add_subcommand("dual", "dual graph of a map");
    dualc->add_option("input", in, ".cmap file")->required();
    dualc->add_option("-o", out, "output .g (default stdout)");

    auto* color = app.add_subcommand("color", "exact face k-coloring");
    color->add_option("input", in, ".cmap file")->required();
    color->add_option("-k", k, "number of colors")->check(CLI::IsMember({2, 3, 4}));
    color->add_option("-o", out, "output .fc (default stdout)");

    auto* flow = app.add_subcommand("flow3", "modulo-3-orientation / nowhere-zero 3-flow");
    flow->add_option("input", in, ".g file")->required();
    flow->add_option("-o", out, "output .or (default stdout)");

    auto* z3 = app.add_subcommand("z3conn", "test Z3-connectivity");
    z3->add_option("input", in, ".g file")->required();

    auto* crit = app.add_subcommand("critical", "vertex- or edge-3-criticality");
    crit->add_option("input", in, ".g file")->required();
    crit->add_option("mode", kind, "vertex or edge")->required()->check(CLI::IsMember({"vertex", "edge"}));

    auto* decide = app.add_subcommand("decide", "facial 3-colorability decision ladder");
    decide->add_option("input", in, ".g file")->required();
    decide->add_flag("--json", json_flag, "machine-readable output");

    auto* norm = app.add_subcommand("normalize", "surgically repair a drawing");
    norm->add_option("input", in, ".cmap file")->required();
    norm->add_flag("--trace", trace, "report each surgery step as a JSON line");
    norm->add_option("-o", out, "output .cmap (default stdout)");

    auto* gen = app.add_subcommand("gen", "generate graphs and drawings");
    gen->add_option("family", kind, "kmn | k3nplus | circle")->required()
        ->check(CLI::IsMember({"kmn", "k3nplus", "circle"}));
    gen->add_option("args", gen_args, "kmn: M N; k3nplus: N; circle: .g file");
    gen->add_flag("--orient", orient, "kmn: emit the constructive orientation instead");
    std::string circle_order;
    gen->add_option("--order", circle_order, "circle: comma separated vertex order");
    gen->add_option("-o", out, "output file (default stdout)");

    auto* couter = app.add_subcommand("color-outer", "3-color a map with all vertices outside");
    couter->add_option("input", in, ".cmap file")->required();
    couter->add_option("-o", out, "output .fc (default stdout)");

    auto* ck3n = app.add_subcommand("color-k3nplus", "3-color a good drawing of K3n+");
    ck3n->add_option("input", in, ".cmap file")->required();
    ck3n->add_option("-o", out, "output .fc (default stdout)");

    auto* exp = app.add_subcommand("export", "render a map as svg or dot");
    exp->add_option("format", kind, "svg or dot")->required()->check(CLI::IsMember({"svg", "dot"}));
    exp->add_option("input", in, ".cmap file")->required();
    exp->add_option("--coloring", coloring_path, ".fc file to fill faces (svg)");
    exp->add_option("--orientation", orientation_path, ".or file to draw arrows");
    exp->add_option("-o", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Guards guards = guards_from_env();

        if (planarize->parsed()) {
            spit(out, serialize_cmap(ingest_polylines(parse_poly(slurp(in)))));
            return 0;
        }
        if (faces->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            std::cout << "faces " << d.face_count() << "\n";
            for (int f = 0; f < d.face_count(); ++f) {
                std::cout << "face " << f << (f == d.outer ? " outer:" : ":");
                for (int dart : d.face_orbits[f])
                    std::cout << " " << ((dart & 1) ? -(dart / 2 + 1) : dart / 2 + 1);
                std::cout << "\n";
            }
            return 0;
        }
        if (dualc->parsed()) {
            spit(out, serialize_graph(dual(parse_cmap(slurp(in)))));
            return 0;
        }
        if (color->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            auto fc = color_faces_exact(d, k);
            if (!fc) {
                std::cerr << "no face-" << k << "-coloring\n";
                return 1;
            }
            spit(out, serialize_fc(*fc));
            return 0;
        }
        if (flow->parsed()) {
            Multigraph g = parse_graph(slurp(in));
            auto o = mod3_orientation(g);
            if (!o) {
                std::cerr << "no modulo-3-orientation\n";
                return 1;
            }
            spit(out, serialize_orientation(*o));
            return 0;
        }
        if (z3->parsed()) {
            Multigraph g = parse_graph(slurp(in));
            bool yes = is_z3_connected(g, guards.z3);
            std::cout << (yes ? "Z3-connected\n" : "not Z3-connected\n");
            return yes ? 0 : 1;
        }
        if (crit->parsed()) {
            Multigraph g = parse_graph(slurp(in));
            bool yes = kind == "vertex" ? is_vertex_3_critical(g) : is_edge_3_critical(g);
            std::cout << (yes ? "" : "not ") << kind << "-3-critical\n";
            return yes ? 0 : 1;
        }
        if (decide->parsed()) {
            Multigraph g = parse_graph(slurp(in));
            DecideOptions opt;
            opt.subcontraction_guard = guards.subcontraction;
            opt.minor_guard = guards.minor;
            auto t0 = std::chrono::steady_clock::now();
            Decision d = decide_facially_3_colorable(g, opt);
            auto t1 = std::chrono::steady_clock::now();
            bool ok = certificate_verify(g, d);
            auto t2 = std::chrono::steady_clock::now();
            double decide_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            double verify_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
            if (json_flag) {
                json j = {{"schema", 1},
                          {"verdict", verdict_name(d.verdict)},
                          {"rule", d.rule},
                          {"attempted", d.attempted},
                          {"verified", ok},
                          {"timings", {{"decide_ms", decide_ms}, {"verify_ms", verify_ms}}}};
                j["certificate"] = d.certificate ? certificate_json(*d.certificate) : json(nullptr);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "verdict " << verdict_name(d.verdict) << "\n";
                if (!d.rule.empty()) std::cout << "rule " << d.rule << "\n";
                if (!ok) std::cout << "certificate failed verification\n";
            }
            if (!ok) return 3;
            return d.verdict == Verdict::NO ? 1 : 0;
        }
        if (norm->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            NormalizeResult r = normalize(d);
            if (trace)
                for (const SurgeryStep& s : r.steps) {
                    json j = {{"op", surgery_op_name(s.op)},
                              {"site", s.site},
                              {"e1", s.e1},
                              {"e2", s.e2},
                              {"triples_before", s.triples_before},
                              {"triples_after", s.triples_after},
                              {"touchings_before", s.touchings_before},
                              {"touchings_after", s.touchings_after}};
                    std::cout << j.dump() << "\n";
                }
            spit(out, serialize_cmap(r.drawing));
            return 0;
        }
        if (gen->parsed()) {
            if (kind == "kmn") {
                if (gen_args.size() != 2) throw CLI::ValidationError("gen kmn needs M and N");
                int m = to_int(gen_args[0]), n = to_int(gen_args[1]);
                if (orient)
                    spit(out, serialize_orientation(kmn_mod3_orientation(m, n)));
                else
                    spit(out, serialize_graph(complete_bipartite(m, n)));
            } else if (kind == "k3nplus") {
                if (gen_args.size() != 1) throw CLI::ValidationError("gen k3nplus needs N");
                spit(out, serialize_graph(k3nplus(to_int(gen_args[0]))));
            } else {
                if (gen_args.size() != 1) throw CLI::ValidationError("gen circle needs a .g file");
                Multigraph g = parse_graph(slurp(gen_args[0]));
                std::vector<int> order;
                if (circle_order.empty()) {
                    order = g.vertices();
                } else {
                    std::stringstream ss(circle_order);
                    std::string tok;
                    while (std::getline(ss, tok, ','))
                        if (!tok.empty()) order.push_back(to_int(tok));
                }
                spit(out, serialize_poly(circle_drawing(g, order)));
            }
            return 0;
        }
        if (couter->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            spit(out, serialize_fc(outerface_3coloring(d)));
            return 0;
        }
        if (ck3n->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            spit(out, serialize_fc(k3nplus_coloring(d)));
            return 0;
        }
        if (exp->parsed()) {
            PlanarizedDrawing d = parse_cmap(slurp(in));
            std::optional<Orientation> lifted;
            if (!orientation_path.empty())
                lifted = lift_orientation(d, parse_orientation(slurp(orientation_path), d.underlying));
            if (kind == "dot") {
                std::optional<Orientation> abstract;
                if (!orientation_path.empty())
                    abstract = parse_orientation(slurp(orientation_path), d.underlying);
                spit(out, dot_export(d, abstract ? &*abstract : nullptr));
            } else {
                std::optional<FaceColoring> fc;
                if (!coloring_path.empty()) {
                    fc = parse_fc(slurp(coloring_path));
                    if ((int)fc->color.size() != d.face_count())
                        throw invalid_input("coloring has the wrong number of faces");
                }
                spit(out, svg_export(d, fc ? &*fc : nullptr, lifted ? &*lifted : nullptr));
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const guard_exceeded& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const invalid_input& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return 2;
}
