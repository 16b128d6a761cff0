#include "facetint/decide.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "facetint/generators.hpp"

namespace facetint {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::YES: return "YES";
    case Verdict::NO: return "NO";
    default: return "UNKNOWN";
  }
}

namespace {

int max_degree(const Multigraph& g) {
  int m = 0;
  for (int v : g.vertices()) m = std::max(m, g.degree(v));
  return m;
}

bool is_cubic(const Multigraph& g) {
  if (g.vertex_count() == 0) return false;
  for (int v : g.vertices())
    if (g.degree(v) != 3) return false;
  return true;
}

Multigraph k33_pattern() { return complete_bipartite(3, 3); }

bool planar_by_minors(const Multigraph& g, int guard) {
  return !has_minor(g, k33_pattern(), guard) && !has_minor(g, complete_graph(5), guard);
}

// shortest odd cycle as a vertex-id list; empty when bipartite. A loop is a
// cycle of length 1. The global minimum is chordless: a chord would close a
// strictly shorter odd cycle.
std::vector<int> shortest_odd_cycle(const Multigraph& g) {
  for (const Edge& e : g.edges())
    if (e.is_loop()) return {e.u};
  const auto& vs = g.vertices();
  int n = (int)vs.size();
  auto pos = [&](int id) {
    return (int)(std::lower_bound(vs.begin(), vs.end(), id) - vs.begin());
  };
  std::vector<std::set<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[pos(e.u)].insert(pos(e.v));
    adj[pos(e.v)].insert(pos(e.u));
  }
  int best_len = -1;
  std::vector<int> best;
  for (int r = 0; r < n; r++) {
    std::vector<int> dist(n, -1), par(n, -1);
    std::vector<int> bfs{r};
    dist[r] = 0;
    for (size_t qi = 0; qi < bfs.size(); qi++) {
      int u = bfs[qi];
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          par[w] = u;
          bfs.push_back(w);
        }
    }
    // an edge within a BFS level closes an odd closed walk through r
    for (int u = 0; u < n; u++) {
      if (dist[u] < 0) continue;
      for (int w : adj[u]) {
        if (w <= u || dist[w] != dist[u]) continue;
        if (best_len >= 0 && dist[u] + dist[w] + 1 >= best_len) continue;
        // climb both tree paths, drop the shared prefix above the apex
        std::vector<int> pu{u}, pw{w};
        while (pu.back() != r) pu.push_back(par[pu.back()]);
        while (pw.back() != r) pw.push_back(par[pw.back()]);
        while (pu.size() >= 2 && pw.size() >= 2 &&
               pu[pu.size() - 2] == pw[pw.size() - 2]) {
          pu.pop_back();
          pw.pop_back();
        }
        std::vector<int> cyc(pu.begin(), pu.end());  // u .. apex
        for (int i = (int)pw.size() - 2; i >= 0; i--) cyc.push_back(pw[i]);
        if (best_len < 0 || (int)cyc.size() < best_len) {
          best_len = (int)cyc.size();
          best = cyc;
        }
      }
    }
  }
  for (int& x : best) x = vs[x];
  return best;
}

// rim classes are the cycle vertices in order, everything else the hub;
// kept only when the quotient multiplicities match the wheel exactly
std::optional<SubcontractionCertificate> wheel_quotient(const Multigraph& g,
                                                        const std::vector<int>& cycle) {
  int k = (int)cycle.size();
  if (k < 3 || g.vertex_count() <= k) return std::nullopt;
  std::map<int, int> cls;
  for (int v : g.vertices()) cls[v] = k;
  for (int i = 0; i < k; i++) cls[cycle[i]] = i;
  Multigraph w = wheel_graph(k);
  std::map<std::pair<int, int>, int> got, want;
  for (const Edge& e : g.edges()) {
    int a = cls[e.u], b = cls[e.v];
    if (a != b) got[{std::min(a, b), std::max(a, b)}]++;
  }
  for (const Edge& e : w.edges()) want[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
  if (got != want) return std::nullopt;
  SubcontractionCertificate c;
  c.pattern = w;
  for (int v : g.vertices()) c.class_of.push_back(cls[v]);
  return c;
}

bool orientation_fits(const Multigraph& g, const Orientation& o) {
  if (!(o.graph == g)) return false;
  if ((int)o.forward.size() != g.edge_count()) return false;
  for (const Edge& e : g.edges())
    if (!o.forward.count(e.id)) return false;
  return true;
}

bool graph_is_simple(const Multigraph& g) {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) return false;
    auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
    if (!seen.insert(key).second) return false;
  }
  return true;
}

bool connected_avoiding(const Multigraph& g, const std::array<int, 3>& skip) {
  const auto& vs = g.vertices();
  if (vs.empty()) return true;
  auto pos = [&](int id) {
    return (int)(std::lower_bound(vs.begin(), vs.end(), id) - vs.begin());
  };
  std::vector<std::vector<int>> adj(vs.size());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    if (e.id == skip[0] || e.id == skip[1] || e.id == skip[2]) continue;
    adj[pos(e.u)].push_back(pos(e.v));
    adj[pos(e.v)].push_back(pos(e.u));
  }
  std::vector<char> vis(vs.size(), 0);
  std::vector<int> bfs{0};
  vis[0] = 1;
  for (size_t i = 0; i < bfs.size(); i++)
    for (int w : adj[bfs[i]])
      if (!vis[w]) {
        vis[w] = 1;
        bfs.push_back(w);
      }
  return std::count(vis.begin(), vis.end(), 1) == (int)vs.size();
}

// 3-edge-connected, and every disconnecting edge triple is the star of a
// degree-3 vertex
bool star_3_cuts_only(const Multigraph& g) {
  auto ec = edge_connectivity(g, 3);
  if (!ec.exact) return true;  // connectivity at least 4: no 3-cuts exist
  if (ec.lambda < 3) return false;
  const auto& es = g.edges();
  int m = (int)es.size();
  for (int i = 0; i < m; i++)
    for (int j = i + 1; j < m; j++)
      for (int k = j + 1; k < m; k++) {
        std::array<int, 3> skip{es[i].id, es[j].id, es[k].id};
        if (connected_avoiding(g, skip)) continue;
        std::vector<int> ids(skip.begin(), skip.end());
        std::sort(ids.begin(), ids.end());
        bool star = false;
        for (int v : g.vertices()) {
          if (g.degree(v) != 3) continue;
          auto inc = g.incident_edges(v);
          std::sort(inc.begin(), inc.end());
          if (inc == ids) star = true;
        }
        if (!star) return false;
      }
  return true;
}

}  // namespace

Decision decide_facially_3_colorable(const Multigraph& g, const DecideOptions& opt) {
  Decision d;
  auto res = [&](Verdict v, const char* rule, Certificate c) {
    d.verdict = v;
    d.rule = rule;
    d.certificate = std::move(c);
    return d;
  };

  d.attempted.push_back("leaf");
  for (int v : g.vertices())
    if (g.degree(v) == 1) return res(Verdict::NO, "leaf", LeafCertificate{v});

  d.attempted.push_back("bridge");
  auto brs = bridges(g);
  if (!brs.empty()) {
    int eid = *std::min_element(brs.begin(), brs.end());
    Multigraph h;
    for (int v : g.vertices()) h.add_vertex(v);
    for (const Edge& e : g.edges())
      if (e.id != eid) h.add_edge(e.id, e.u, e.v);
    auto comp = h.components();
    const auto& vs = g.vertices();
    int cu = comp[std::lower_bound(vs.begin(), vs.end(), g.edge(eid).u) - vs.begin()];
    BridgeCertificate bc;
    bc.edge = eid;
    for (size_t i = 0; i < vs.size(); i++)
      (comp[i] == cu ? bc.side_x : bc.side_y).push_back(vs[i]);
    return res(Verdict::NO, "bridge", bc);
  }

  d.attempted.push_back("mod3-orientation");
  if (auto o = mod3_orientation(g))
    return res(Verdict::YES, "mod3-orientation", Mod3Certificate{*o});

  d.attempted.push_back("four-edge-connected");
  if (!edge_connectivity(g, 3).exact)
    return res(Verdict::YES, "four-edge-connected", FourEdgeConnectedCertificate{3});

  d.attempted.push_back("subcubic");
  if (max_degree(g) <= 3) {
    // the solver already failed, so in this degree range the answer is NO
    if (is_cubic(g)) {
      auto cyc = shortest_odd_cycle(g);
      if (cyc.empty())
        throw error("decide: bipartite cubic graph slipped past the flow solver");
      if (auto sc = wheel_quotient(g, cyc)) return res(Verdict::NO, "cubic-bipartite", *sc);
      CubicBipartiteCertificate cb;
      cb.odd_cycle = cyc;
      return res(Verdict::NO, "cubic-bipartite", cb);
    }
    return res(Verdict::NO, "subcubic-no-flow", SubcubicRefutationCertificate{});
  }

  d.attempted.push_back("k33-minor-free");
  try {
    if (!has_minor(g, k33_pattern(), opt.minor_guard))
      return res(Verdict::NO, "k33-minor-free", K33MinorFreeCertificate{});
  } catch (const guard_exceeded&) {
    d.attempted.back() += " (guard exceeded)";
  }

  d.attempted.push_back("k3nplus");
  if (auto st = k3nplus_structure(g)) {
    K3nPlusCertificate kc;
    kc.n = (int)st->b.size();
    for (int i = 0; i < 3; i++) kc.iso.push_back({st->a[i], i});
    for (size_t j = 0; j < st->b.size(); j++) kc.iso.push_back({st->b[j], 3 + (int)j});
    return res(Verdict::YES, "k3nplus", kc);
  }

  d.attempted.push_back("bad-subcontraction");
  std::vector<Multigraph> pats{wheel_graph(3), wheel_graph(5), wheel_graph(7)};
  for (const Multigraph& p : opt.extra_patterns) {
    if (mod3_orientation(p) || !planar_by_minors(p, opt.minor_guard))
      throw invalid_input(
          "decide: extra patterns must be planar with no modulo-3-orientation");
    pats.push_back(p);
  }
  for (const Multigraph& p : pats) {
    if (p.vertex_count() > g.vertex_count()) continue;
    try {
      if (auto w = exact_subcontraction(g, p, opt.subcontraction_guard)) {
        SubcontractionCertificate sc;
        sc.pattern = p;
        sc.class_of = w->class_of;
        return res(Verdict::NO, "bad-subcontraction", sc);
      }
    } catch (const guard_exceeded&) {
      d.attempted.back() = "bad-subcontraction (guard exceeded)";
      break;  // the guard keys on the input graph, later patterns fare no better
    }
  }

  return d;  // UNKNOWN, attempted filled in
}

bool certificate_verify(const Multigraph& g, const Decision& d) {
  if (d.verdict == Verdict::UNKNOWN) return !d.certificate.has_value();
  if (!d.certificate) return false;
  const Certificate& cert = *d.certificate;
  bool yes = d.verdict == Verdict::YES;

  if (auto* m = std::get_if<Mod3Certificate>(&cert))
    return yes && orientation_fits(g, m->orientation) && check_mod3(m->orientation);

  if (auto* f = std::get_if<FourEdgeConnectedCertificate>(&cert)) {
    if (!yes || f->checked_ceiling < 3) return false;
    return !edge_connectivity(g, 3).exact;
  }

  if (auto* cb = std::get_if<CubicBipartiteCertificate>(&cert)) {
    if (!is_cubic(g)) return false;
    const auto& vs = g.vertices();
    auto pos = [&](int id) {
      return (int)(std::lower_bound(vs.begin(), vs.end(), id) - vs.begin());
    };
    if (yes) {
      if (!cb->sides || !cb->odd_cycle.empty()) return false;
      const auto& s = *cb->sides;
      if ((int)s.size() != g.vertex_count()) return false;
      for (int x : s)
        if (x != 0 && x != 1) return false;
      for (const Edge& e : g.edges())
        if (e.is_loop() || s[pos(e.u)] == s[pos(e.v)]) return false;
      return true;
    }
    if (cb->sides) return false;  // a bipartition argues for YES, not NO
    const auto& w = cb->odd_cycle;
    if (w.empty() || w.size() % 2 == 0) return false;
    for (int v : w)
      if (!g.has_vertex(v)) return false;
    if (w.size() == 1) {
      for (const Edge& e : g.edges())
        if (e.is_loop() && e.u == w[0]) return true;
      return false;
    }
    for (size_t i = 0; i < w.size(); i++) {
      int u = w[i], v = w[(i + 1) % w.size()];
      if (u == v) return false;
      bool adjacent = false;
      for (const Edge& e : g.edges())
        if (!e.is_loop() && ((e.u == u && e.v == v) || (e.u == v && e.v == u)))
          adjacent = true;
      if (!adjacent) return false;
    }
    return true;
  }

  if (std::get_if<SubcubicRefutationCertificate>(&cert))
    return !yes && max_degree(g) <= 3 && !mod3_orientation(g);

  if (auto* k = std::get_if<K33MinorFreeCertificate>(&cert)) {
    if (has_minor(g, k33_pattern())) return false;
    if (yes)
      return k->orientation && orientation_fits(g, *k->orientation) &&
             check_mod3(*k->orientation);
    return !k->orientation && !mod3_orientation(g);
  }

  if (auto* kp = std::get_if<K3nPlusCertificate>(&cert)) {
    if (!yes || kp->n < 4) return false;
    Multigraph pat = k3nplus(kp->n);
    if (g.vertex_count() != pat.vertex_count() || g.edge_count() != pat.edge_count())
      return false;
    std::map<int, int> fwd;
    std::set<int> img;
    for (auto [a, b] : kp->iso) {
      if (!g.has_vertex(a) || !pat.has_vertex(b)) return false;
      if (fwd.count(a) || img.count(b)) return false;
      fwd[a] = b;
      img.insert(b);
    }
    if ((int)fwd.size() != g.vertex_count()) return false;
    std::map<std::pair<int, int>, int> got, want;
    for (const Edge& e : g.edges()) {
      int a = fwd[e.u], b = fwd[e.v];
      got[{std::min(a, b), std::max(a, b)}]++;
    }
    for (const Edge& e : pat.edges()) want[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
    return got == want;
  }

  if (auto* br = std::get_if<BridgeCertificate>(&cert)) {
    if (yes || !g.has_edge(br->edge)) return false;
    std::set<int> sx(br->side_x.begin(), br->side_x.end());
    std::set<int> sy(br->side_y.begin(), br->side_y.end());
    if (sx.empty() || sy.empty()) return false;
    if ((int)(sx.size() + sy.size()) != g.vertex_count()) return false;
    for (int v : g.vertices())
      if (sx.count(v) + sy.count(v) != 1) return false;
    // the partition witnesses the bridge: exactly one edge crosses it
    int crossing = 0, last = -1;
    for (const Edge& e : g.edges())
      if (sx.count(e.u) != sx.count(e.v)) {
        crossing++;
        last = e.id;
      }
    return crossing == 1 && last == br->edge;
  }

  if (auto* lf = std::get_if<LeafCertificate>(&cert))
    return !yes && g.has_vertex(lf->vertex) && g.degree(lf->vertex) == 1;

  if (auto* sc = std::get_if<SubcontractionCertificate>(&cert)) {
    if (yes) return false;
    const Multigraph& p = sc->pattern;
    if (p.vertex_count() == 0) return false;
    if ((int)sc->class_of.size() != g.vertex_count()) return false;
    std::set<int> pv(p.vertices().begin(), p.vertices().end());
    std::set<int> used;
    for (int c : sc->class_of) {
      if (!pv.count(c)) return false;
      used.insert(c);
    }
    if (used.size() != pv.size()) return false;
    const auto& vs = g.vertices();
    std::map<int, int> cls;
    for (size_t i = 0; i < vs.size(); i++) cls[vs[i]] = sc->class_of[i];
    std::map<std::pair<int, int>, int> got, want;
    for (const Edge& e : g.edges()) {
      int a = cls[e.u], b = cls[e.v];
      if (a != b) got[{std::min(a, b), std::max(a, b)}]++;
    }
    for (const Edge& e : p.edges()) {
      if (e.is_loop()) return false;  // identifications never leave loops behind
      want[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
    }
    if (got != want) return false;
    // the quotient must itself be a certified obstruction
    return planar_by_minors(p, 20) && !mod3_orientation(p);
  }

  return false;
}

ConjectureReport conjecture_gate(const Multigraph& g, int guard_vertices) {
  if (g.vertex_count() > guard_vertices)
    throw guard_exceeded("conjecture_gate: graph has " +
                         std::to_string(g.vertex_count()) + " vertices, guard is " +
                         std::to_string(guard_vertices));
  ConjectureReport r;
  Decision d = decide_facially_3_colorable(g);
  r.colorable = d.verdict;
  r.rule = d.rule;
  r.flowable = mod3_orientation(g).has_value();

  for (int n = 4; n + 3 <= g.vertex_count(); n++) {
    if (3 * n + 1 > g.edge_count()) break;  // a quotient cannot gain edges
    if (auto w = exact_subcontraction(g, k3nplus(n), guard_vertices)) {
      r.k3nplus_free = false;
      r.k3nplus_n = n;
      break;
    }
  }

  r.candidate_counterexample =
      r.colorable == Verdict::YES && !r.flowable && r.k3nplus_free;

  if (!r.flowable) {
    r.vertex_3_critical = is_vertex_3_critical(g);
    r.simple = graph_is_simple(g);
    r.star_3_cuts_only = star_3_cuts_only(g);
    r.max_degree_at_least_4 = max_degree(g) >= 4;
    r.has_k33_minor = has_minor(g, k33_pattern()).has_value();
    auto flag = [&](bool ok, const char* name) {
      if (!ok) r.failed_filters.push_back(name);
    };
    flag(r.vertex_3_critical, "vertex-3-critical");
    flag(r.simple, "simple");
    flag(r.star_3_cuts_only, "star-3-cuts");
    flag(r.max_degree_at_least_4, "max-degree-4");
    flag(r.has_k33_minor, "k33-minor");
  }
  return r;
}

}  // namespace facetint
