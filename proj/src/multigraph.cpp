#include "facetint/multigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace facetint {

int Multigraph::vert_pos(int id) const {
  auto it = std::lower_bound(verts_.begin(), verts_.end(), id);
  if (it == verts_.end() || *it != id) return -1;
  return (int)(it - verts_.begin());
}

int Multigraph::edge_pos(int id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, int x) { return e.id < x; });
  if (it == edges_.end() || it->id != id) return -1;
  return (int)(it - edges_.begin());
}

void Multigraph::add_vertex(int id) {
  if (id < 0) throw invalid_input("vertex id must be non-negative");
  auto it = std::lower_bound(verts_.begin(), verts_.end(), id);
  if (it != verts_.end() && *it == id)
    throw invalid_input("duplicate vertex id " + std::to_string(id));
  verts_.insert(it, id);
}

void Multigraph::add_edge(int id, int u, int v) {
  if (id < 0) throw invalid_input("edge id must be non-negative");
  if (vert_pos(u) < 0 || vert_pos(v) < 0)
    throw invalid_input("edge " + std::to_string(id) + " references missing vertex");
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, int x) { return e.id < x; });
  if (it != edges_.end() && it->id == id)
    throw invalid_input("duplicate edge id " + std::to_string(id));
  edges_.insert(it, Edge{id, u, v});
}

bool Multigraph::has_vertex(int id) const { return vert_pos(id) >= 0; }
bool Multigraph::has_edge(int id) const { return edge_pos(id) >= 0; }

const Edge& Multigraph::edge(int id) const {
  int p = edge_pos(id);
  if (p < 0) throw invalid_input("no edge with id " + std::to_string(id));
  return edges_[p];
}

int Multigraph::degree(int v) const {
  if (vert_pos(v) < 0) throw invalid_input("no vertex " + std::to_string(v));
  int d = 0;
  for (const Edge& e : edges_) {
    if (e.u == v) d++;
    if (e.v == v) d++;
  }
  return d;
}

std::vector<int> Multigraph::incident_edges(int v) const {
  std::vector<int> out;
  for (const Edge& e : edges_)
    if (e.u == v || e.v == v) out.push_back(e.id);
  return out;
}

std::vector<int> Multigraph::components() const {
  std::vector<int> comp(verts_.size(), -1);
  int next = 0;
  for (size_t s = 0; s < verts_.size(); s++) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::queue<int> q;
    q.push((int)s);
    while (!q.empty()) {
      int ip = q.front();
      q.pop();
      int vid = verts_[ip];
      for (const Edge& e : edges_) {
        int w = -1;
        if (e.u == vid) w = e.v;
        else if (e.v == vid) w = e.u;
        else continue;
        int wp = vert_pos(w);
        if (comp[wp] < 0) {
          comp[wp] = next;
          q.push(wp);
        }
      }
    }
    next++;
  }
  return comp;
}

int Multigraph::component_count() const {
  auto c = components();
  return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

bool Multigraph::is_connected() const { return component_count() <= 1; }

std::vector<std::array<int, 3>> Multigraph::edge_triples() const {
  std::vector<std::array<int, 3>> t;
  t.reserve(edges_.size());
  for (const Edge& e : edges_)
    t.push_back({e.id, std::min(e.u, e.v), std::max(e.u, e.v)});
  return t;
}

bool is_eulerian(const Multigraph& g) {
  for (int v : g.vertices())
    if (g.degree(v) % 2 != 0) return false;
  return true;
}

namespace {

struct BridgeDfs {
  const Multigraph& g;
  std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (edge id, other)
  std::map<int, int> idx, low;
  int timer = 0;
  std::vector<int> out;

  explicit BridgeDfs(const Multigraph& gg) : g(gg) {
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) continue;
      adj[e.u].push_back({e.id, e.v});
      adj[e.v].push_back({e.id, e.u});
    }
  }

  void run(int root) {
    // iterative dfs, skip the entering edge by id (parallel copies re-enter)
    struct Frame {
      int v;
      int parent_edge;
      size_t next = 0;
    };
    std::vector<Frame> st;
    idx[root] = low[root] = timer++;
    st.push_back({root, -1});
    while (!st.empty()) {
      Frame& f = st.back();
      auto& nb = adj[f.v];
      if (f.next < nb.size()) {
        auto [eid, w] = nb[f.next++];
        if (eid == f.parent_edge) continue;
        auto it = idx.find(w);
        if (it == idx.end()) {
          idx[w] = low[w] = timer++;
          st.push_back({w, eid});
        } else {
          low[f.v] = std::min(low[f.v], it->second);
        }
      } else {
        int v = f.v, pe = f.parent_edge;
        st.pop_back();
        if (!st.empty()) {
          int p = st.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > idx[p]) out.push_back(pe);
        }
      }
    }
  }
};

}  // namespace

std::vector<int> bridges(const Multigraph& g) {
  BridgeDfs d(g);
  for (int v : g.vertices())
    if (!d.idx.count(v) && d.adj.count(v)) d.run(v);
  std::sort(d.out.begin(), d.out.end());
  return d.out;
}

std::optional<std::vector<int>> bipartition(const Multigraph& g) {
  const auto& vs = g.vertices();
  std::vector<int> side(vs.size(), -1);
  auto pos = [&](int id) {
    return (int)(std::lower_bound(vs.begin(), vs.end(), id) - vs.begin());
  };
  for (const Edge& e : g.edges())
    if (e.is_loop()) return std::nullopt;
  for (size_t s = 0; s < vs.size(); s++) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push((int)s);
    while (!q.empty()) {
      int ip = q.front();
      q.pop();
      for (const Edge& e : g.edges()) {
        int w;
        if (e.u == vs[ip]) w = e.v;
        else if (e.v == vs[ip]) w = e.u;
        else continue;
        int wp = pos(w);
        if (side[wp] < 0) {
          side[wp] = 1 - side[ip];
          q.push(wp);
        } else if (side[wp] == side[ip]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

bool is_bipartite(const Multigraph& g) { return bipartition(g).has_value(); }

Multigraph identify(const Multigraph& g, const std::vector<int>& X) {
  if (X.empty()) throw invalid_input("identify: empty vertex set");
  std::set<int> xs(X.begin(), X.end());
  for (int v : xs)
    if (!g.has_vertex(v))
      throw invalid_input("identify: vertex " + std::to_string(v) + " not in graph");
  int vx = *xs.begin();
  Multigraph h;
  for (int v : g.vertices())
    if (!xs.count(v) || v == vx) h.add_vertex(v);
  for (const Edge& e : g.edges()) {
    bool iu = xs.count(e.u) > 0, iv = xs.count(e.v) > 0;
    if (iu && iv) continue;  // internal edges (loops included) vanish
    int u = iu ? vx : e.u;
    int v = iv ? vx : e.v;
    h.add_edge(e.id, u, v);
  }
  return h;
}

Multigraph contract_edge(const Multigraph& g, int e) {
  const Edge& ed = g.edge(e);
  if (ed.is_loop()) throw invalid_input("contract_edge: refusing a loop");
  return identify(g, {ed.u, ed.v});
}

namespace {

// Stoer-Wagner on the loop-free multigraph with parallel multiplicities as
// weights. Returns (lambda, one side of a minimum cut).
std::pair<long long, std::vector<int>> global_min_cut(const Multigraph& g) {
  std::vector<int> ids = g.vertices();
  int n = (int)ids.size();
  std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
  auto pos = [&](int id) {
    return (int)(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    int a = pos(e.u), b = pos(e.v);
    w[a][b] += 1;
    w[b][a] += 1;
  }
  std::vector<std::vector<int>> merged(n);
  for (int i = 0; i < n; i++) merged[i] = {ids[i]};
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);

  long long best = -1;
  std::vector<int> best_side;
  while (active.size() > 1) {
    std::vector<int> a;
    std::vector<long long> wsum(n, 0);
    std::vector<char> in(n, 0);
    int first = active[0];
    a.push_back(first);
    in[first] = 1;
    for (int v : active) wsum[v] = w[first][v];
    int prev = first, last = first;
    for (size_t k = 1; k < active.size(); k++) {
      int sel = -1;
      for (int v : active)
        if (!in[v] && (sel < 0 || wsum[v] > wsum[sel])) sel = v;
      in[sel] = 1;
      prev = last;
      last = sel;
      if (k + 1 == active.size()) {
        if (best < 0 || wsum[sel] < best) {
          best = wsum[sel];
          best_side = merged[sel];
        }
      }
      for (int v : active)
        if (!in[v]) wsum[v] += w[sel][v];
    }
    // merge last into prev
    for (int v : active) {
      if (v == last || v == prev) continue;
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    merged[prev].insert(merged[prev].end(), merged[last].begin(), merged[last].end());
    active.erase(std::find(active.begin(), active.end(), last));
  }
  std::sort(best_side.begin(), best_side.end());
  return {best, best_side};
}

}  // namespace

EdgeConnectivity edge_connectivity(const Multigraph& g, int ceiling) {
  if (ceiling < 0) throw invalid_input("edge_connectivity: negative ceiling");
  EdgeConnectivity r;
  if (g.vertex_count() <= 1) {
    // no two vertices to separate
    r.lambda = ceiling + 1;
    r.exact = false;
    return r;
  }
  if (!g.is_connected()) {
    r.lambda = 0;
    r.exact = true;
    CutWitness cw;
    auto comp = g.components();
    for (size_t i = 0; i < comp.size(); i++)
      (comp[i] == 0 ? cw.side_x : cw.side_y).push_back(g.vertices()[i]);
    r.witness = cw;
    return r;
  }
  auto [lam, side] = global_min_cut(g);
  if (lam > ceiling) {
    r.lambda = ceiling + 1;
    r.exact = false;
    return r;
  }
  r.lambda = (int)lam;
  r.exact = true;
  CutWitness cw;
  cw.side_x = side;
  std::set<int> xs(side.begin(), side.end());
  for (int v : g.vertices())
    if (!xs.count(v)) cw.side_y.push_back(v);
  for (const Edge& e : g.edges()) {
    bool iu = xs.count(e.u) > 0, iv = xs.count(e.v) > 0;
    if (iu != iv) cw.cut_edges.push_back(e.id);
  }
  r.witness = cw;
  return r;
}

namespace {

struct SurjSearch {
  const Multigraph& g;
  const Multigraph& pat;
  bool exact;
  std::vector<int> gverts, pverts;
  std::vector<std::vector<int>> need;       // pattern multiplicities
  std::vector<std::vector<int>> need_loop;  // unused; pattern loops handled apart
  std::vector<int> ploops;                  // loops per pattern vertex
  std::vector<int> assign;                  // g vertex pos -> pattern class pos
  std::vector<std::vector<int>> have;       // current inter-class counts
  std::vector<int> class_size;
  std::vector<std::vector<std::pair<int, int>>> inc;  // g pos -> (other pos, mult)
  std::vector<int> gloops;                            // loops per g vertex pos

  SurjSearch(const Multigraph& gg, const Multigraph& pp, bool ex)
      : g(gg), pat(pp), exact(ex) {
    gverts = g.vertices();
    pverts = pat.vertices();
    int np = (int)pverts.size(), ng = (int)gverts.size();
    need.assign(np, std::vector<int>(np, 0));
    ploops.assign(np, 0);
    auto ppos = [&](int id) {
      return (int)(std::lower_bound(pverts.begin(), pverts.end(), id) - pverts.begin());
    };
    for (const Edge& e : pat.edges()) {
      if (e.is_loop()) {
        ploops[ppos(e.u)]++;
      } else {
        int a = ppos(e.u), b = ppos(e.v);
        need[a][b]++;
        need[b][a]++;
      }
    }
    auto gpos = [&](int id) {
      return (int)(std::lower_bound(gverts.begin(), gverts.end(), id) - gverts.begin());
    };
    inc.assign(ng, {});
    gloops.assign(ng, 0);
    std::map<std::pair<int, int>, int> mult;
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) {
        gloops[gpos(e.u)]++;
        continue;
      }
      int a = gpos(e.u), b = gpos(e.v);
      mult[{std::min(a, b), std::max(a, b)}]++;
    }
    for (auto& [k, m] : mult) {
      inc[k.first].push_back({k.second, m});
      inc[k.second].push_back({k.first, m});
    }
    assign.assign(ng, -1);
    have.assign(np, std::vector<int>(np, 0));
    class_size.assign(np, 0);
  }

  bool counts_ok_final() {
    int np = (int)pverts.size();
    for (int a = 0; a < np; a++) {
      if (class_size[a] == 0) return false;
      for (int b = a + 1; b < np; b++) {
        if (exact ? (have[a][b] != need[a][b]) : (have[a][b] < need[a][b]))
          return false;
      }
      if (ploops[a] > 0) {
        // only an untouched singleton keeps its loops through identify()
        if (class_size[a] != 1) return false;
        int gv = -1;
        for (size_t i = 0; i < assign.size(); i++)
          if (assign[i] == a) gv = (int)i;
        int gl = gloops[gv];
        if (exact ? (gl != ploops[a]) : (gl < ploops[a])) return false;
      } else if (exact && class_size[a] == 1) {
        // exact quotient of a singleton keeps loops unless an extra
        // identify step deletes them, which is always allowed; fine
      }
    }
    return true;
  }

  bool feasible_prefix(int upto) {
    // edges already fully decided must not exceed exact targets
    if (!exact) return true;
    int np = (int)pverts.size();
    for (int a = 0; a < np; a++)
      for (int b = a + 1; b < np; b++)
        if (have[a][b] > need[a][b]) return false;
    (void)upto;
    return true;
  }

  std::optional<SubcontractionWitness> run() {
    if (gverts.size() < pverts.size()) return std::nullopt;
    if (dfs(0)) {
      SubcontractionWitness w;
      w.class_of.resize(assign.size());
      for (size_t i = 0; i < assign.size(); i++)
        w.class_of[i] = pverts[assign[i]];
      return w;
    }
    return std::nullopt;
  }

  bool dfs(int i) {
    int ng = (int)gverts.size(), np = (int)pverts.size();
    if (i == ng) return counts_ok_final();
    // remaining vertices must be able to fill the empty classes
    int empty = 0;
    for (int a = 0; a < np; a++)
      if (class_size[a] == 0) empty++;
    if (ng - i < empty) return false;
    for (int a = 0; a < np; a++) {
      assign[i] = a;
      class_size[a]++;
      for (auto [j, m] : inc[i]) {
        if (j < i) {
          int b = assign[j];
          if (b != a) {
            have[std::min(a, b)][std::max(a, b)] += m;
            have[std::max(a, b)][std::min(a, b)] += m;
          }
        }
      }
      if (feasible_prefix(i) && dfs(i + 1)) return true;
      for (auto [j, m] : inc[i]) {
        if (j < i) {
          int b = assign[j];
          if (b != a) {
            have[std::min(a, b)][std::max(a, b)] -= m;
            have[std::max(a, b)][std::min(a, b)] -= m;
          }
        }
      }
      class_size[a]--;
      assign[i] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<SubcontractionWitness> has_subcontraction(const Multigraph& g,
                                                        const Multigraph& pattern,
                                                        int guard_vertices) {
  if (g.vertex_count() > guard_vertices)
    throw guard_exceeded("has_subcontraction: graph has " +
                         std::to_string(g.vertex_count()) + " vertices, guard is " +
                         std::to_string(guard_vertices));
  if (pattern.vertex_count() == 0) throw invalid_input("empty pattern");
  SurjSearch s(g, pattern, false);
  return s.run();
}

std::optional<SubcontractionWitness> exact_subcontraction(const Multigraph& g,
                                                          const Multigraph& pattern,
                                                          int guard_vertices) {
  if (g.vertex_count() > guard_vertices)
    throw guard_exceeded("exact_subcontraction: graph has " +
                         std::to_string(g.vertex_count()) + " vertices, guard is " +
                         std::to_string(guard_vertices));
  if (pattern.vertex_count() == 0) throw invalid_input("empty pattern");
  SurjSearch s(g, pattern, true);
  return s.run();
}

namespace {

// delete/contract recursion; branch sets carried as vertex classes
struct MinorSearch {
  const Multigraph& pat;
  std::vector<int> pverts;
  std::vector<std::vector<int>> need;

  explicit MinorSearch(const Multigraph& p) : pat(p) {
    pverts = pat.vertices();
    int np = (int)pverts.size();
    need.assign(np, std::vector<int>(np, 0));
    auto ppos = [&](int id) {
      return (int)(std::lower_bound(pverts.begin(), pverts.end(), id) - pverts.begin());
    };
    for (const Edge& e : pat.edges()) {
      if (e.is_loop()) throw invalid_input("has_minor: loop patterns unsupported");
      int a = ppos(e.u), b = ppos(e.v);
      need[a][b]++;
      need[b][a]++;
    }
  }

  // classes: current vertex id -> set of original vertices
  bool base_check(const Multigraph& g, const std::map<int, std::vector<int>>& classes,
                  MinorWitness& out) {
    int np = (int)pverts.size();
    std::vector<int> gv = g.vertices();
    if ((int)gv.size() != np) return false;
    std::vector<std::vector<int>> have(np, std::vector<int>(np, 0));
    auto gpos = [&](int id) {
      return (int)(std::lower_bound(gv.begin(), gv.end(), id) - gv.begin());
    };
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) continue;
      int a = gpos(e.u), b = gpos(e.v);
      have[a][b]++;
      have[b][a]++;
    }
    std::vector<int> perm(np);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (int a = 0; a < np && ok; a++)
        for (int b = a + 1; b < np && ok; b++)
          if (have[perm[a]][perm[b]] < need[a][b]) ok = false;
      if (ok) {
        out.branch_sets.assign(np, {});
        for (int a = 0; a < np; a++) {
          auto it = classes.find(gv[perm[a]]);
          out.branch_sets[a] = it->second;
          std::sort(out.branch_sets[a].begin(), out.branch_sets[a].end());
        }
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  std::set<std::string> visited;

  static std::string state_key(const Multigraph& g) {
    std::string s;
    for (int v : g.vertices()) s += std::to_string(v) + ".";
    s += "|";
    for (auto& t : g.edge_triples())
      s += std::to_string(t[1]) + "-" + std::to_string(t[2]) + ",";
    return s;
  }

  bool rec(const Multigraph& g, std::map<int, std::vector<int>> classes,
           MinorWitness& out) {
    int np = (int)pverts.size();
    if (g.vertex_count() < np) return false;
    if (g.edge_count() < pat.edge_count()) return false;
    if (!visited.insert(state_key(g)).second) return false;
    if (g.vertex_count() == np) return base_check(g, classes, out);
    // either some vertex is unused, or some branch set contracts an edge
    for (int v : g.vertices()) {
      Multigraph h;
      for (int w : g.vertices())
        if (w != v) h.add_vertex(w);
      for (const Edge& e : g.edges())
        if (e.u != v && e.v != v) h.add_edge(e.id, e.u, e.v);
      auto c2 = classes;
      c2.erase(v);
      if (rec(h, std::move(c2), out)) return true;
    }
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : g.edges()) {
      if (e.is_loop()) continue;
      auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
      if (!seen.insert(key).second) continue;
      Multigraph h = contract_edge(g, e.id);
      auto c2 = classes;
      int keep = std::min(e.u, e.v), gone = std::max(e.u, e.v);
      auto& dst = c2[keep];
      auto& src = c2[gone];
      dst.insert(dst.end(), src.begin(), src.end());
      c2.erase(gone);
      if (rec(h, std::move(c2), out)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<MinorWitness> has_minor(const Multigraph& g, const Multigraph& pattern,
                                      int guard_vertices) {
  if (g.vertex_count() > guard_vertices)
    throw guard_exceeded("has_minor: graph has " + std::to_string(g.vertex_count()) +
                         " vertices, guard is " + std::to_string(guard_vertices));
  if (pattern.vertex_count() == 0) throw invalid_input("empty pattern");
  MinorSearch ms(pattern);
  std::map<int, std::vector<int>> classes;
  for (int v : g.vertices()) classes[v] = {v};
  MinorWitness w;
  if (ms.rec(g, std::move(classes), w)) return w;
  return std::nullopt;
}

std::string canonical_form(const Multigraph& g, int max_vertices) {
  int n = g.vertex_count();
  if (n > max_vertices)
    throw guard_exceeded("canonical_form limited to " + std::to_string(max_vertices) +
                         " vertices");
  std::vector<int> vs = g.vertices();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  auto pos = [&](int id) {
    return (int)(std::lower_bound(vs.begin(), vs.end(), id) - vs.begin());
  };
  do {
    std::vector<std::pair<int, int>> rel;
    rel.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
      int a = perm[pos(e.u)], b = perm[pos(e.v)];
      rel.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(rel.begin(), rel.end());
    std::string s = std::to_string(n) + ";";
    for (auto& [a, b] : rel) s += std::to_string(a) + "-" + std::to_string(b) + ",";
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace facetint
