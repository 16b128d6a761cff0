#include "facetint/flow3.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace facetint {

int Orientation::excess(int v) const {
  int x = 0;
  for (const Edge& e : graph.edges()) {
    if (e.is_loop()) continue;
    if (tail(e.id) == v) x++;
    if (head(e.id) == v) x--;
  }
  return x;
}

Orientation Orientation::reversed() const {
  Orientation o;
  o.graph = graph;
  for (auto& [id, f] : forward) o.forward[id] = !f;
  return o;
}

namespace {

inline int m3(int x) { return ((x % 3) + 3) % 3; }

// Solve: for every vertex v, sum over non-loop edges of sign(v,e)*x_e = t(v)
// over GF(3), with every x_e in {1,2}. x_e = 1 means u->v as stored.
// Gaussian elimination first, then backtracking over the free variables,
// branching those that appear in the most pivot rows.
struct Gf3Solver {
  const Multigraph& g;
  std::vector<int> vids;
  std::vector<int> cols;  // edge ids of non-loop edges
  int nr, nc;
  std::vector<std::vector<int>> A;  // row-major, values 0..2
  std::vector<int> b;

  explicit Gf3Solver(const Multigraph& gg) : g(gg) {
    vids = g.vertices();
    for (const Edge& e : g.edges())
      if (!e.is_loop()) cols.push_back(e.id);
    nr = (int)vids.size();
    nc = (int)cols.size();
    A.assign(nr, std::vector<int>(nc, 0));
    b.assign(nr, 0);
    auto vpos = [&](int id) {
      return (int)(std::lower_bound(vids.begin(), vids.end(), id) - vids.begin());
    };
    for (int c = 0; c < nc; c++) {
      const Edge& e = g.edge(cols[c]);
      A[vpos(e.u)][c] = m3(A[vpos(e.u)][c] + 1);
      A[vpos(e.v)][c] = m3(A[vpos(e.v)][c] - 1);
    }
  }

  void set_targets(const std::map<int, int>& t) {
    auto vpos = [&](int id) {
      return (int)(std::lower_bound(vids.begin(), vids.end(), id) - vids.begin());
    };
    for (auto& [v, tv] : t) {
      if (!g.has_vertex(v)) throw invalid_input("target on missing vertex");
      b[vpos(v)] = m3(tv);
    }
  }

  std::optional<std::vector<int>> solve() {
    // elimination
    std::vector<int> pivot_col_of_row(nr, -1);
    int rank = 0;
    for (int c = 0; c < nc && rank < nr; c++) {
      int pr = -1;
      for (int r = rank; r < nr; r++)
        if (A[r][c] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(A[pr], A[rank]);
      std::swap(b[pr], b[rank]);
      int inv = (A[rank][c] == 1) ? 1 : 2;  // inverse mod 3
      for (int j = c; j < nc; j++) A[rank][j] = m3(A[rank][j] * inv);
      b[rank] = m3(b[rank] * inv);
      for (int r = 0; r < nr; r++) {
        if (r == rank || A[r][c] == 0) continue;
        int f = A[r][c];
        for (int j = c; j < nc; j++) A[r][j] = m3(A[r][j] - f * A[rank][j]);
        b[r] = m3(b[r] - f * b[rank]);
      }
      pivot_col_of_row[rank] = c;
      rank++;
    }
    for (int r = rank; r < nr; r++)
      if (b[r] != 0) return std::nullopt;

    std::vector<char> is_pivot(nc, 0);
    for (int r = 0; r < rank; r++) is_pivot[pivot_col_of_row[r]] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < nc; c++)
      if (!is_pivot[c]) free_cols.push_back(c);

    // branch free variables appearing in the most pivot rows; ties by edge id
    std::vector<int> weight(free_cols.size(), 0);
    for (size_t i = 0; i < free_cols.size(); i++)
      for (int r = 0; r < rank; r++)
        if (A[r][free_cols[i]] != 0) weight[i]++;
    std::vector<int> order(free_cols.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = (int)i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
      if (weight[a] != weight[c]) return weight[a] > weight[c];
      return cols[free_cols[a]] < cols[free_cols[c]];
    });

    // per pivot row: residual and count of unassigned free vars in it
    std::vector<int> resid(rank), open(rank, 0);
    for (int r = 0; r < rank; r++) {
      resid[r] = b[r];
      for (int c : free_cols)
        if (A[r][c] != 0) open[r]++;
    }
    std::vector<std::vector<int>> rows_of_free(free_cols.size());
    for (size_t i = 0; i < free_cols.size(); i++)
      for (int r = 0; r < rank; r++)
        if (A[r][free_cols[i]] != 0) rows_of_free[i].push_back(r);

    std::vector<int> val(nc, -1);
    std::vector<int> fval(free_cols.size(), -1);

    auto assign = [&](int oi, int v) -> bool {
      int fi = order[oi];
      fval[fi] = v;
      bool ok = true;
      for (int r : rows_of_free[fi]) {
        resid[r] = m3(resid[r] - A[r][free_cols[fi]] * v);
        if (--open[r] == 0 && resid[r] == 0) ok = false;  // pivot would be 0
      }
      return ok;
    };
    auto unassign = [&](int oi) {
      int fi = order[oi];
      int v = fval[fi];
      for (int r : rows_of_free[fi]) {
        resid[r] = m3(resid[r] + A[r][free_cols[fi]] * v);
        open[r]++;
      }
      fval[fi] = -1;
    };

    // rows with no free support must already be nonzero
    for (int r = 0; r < rank; r++)
      if (open[r] == 0 && resid[r] == 0) return std::nullopt;

    int nf = (int)free_cols.size();
    std::vector<int> choice(nf, 0);
    int depth = 0;
    while (true) {
      if (depth == nf) {
        for (int r = 0; r < rank; r++) {
          assert(open[r] == 0 && resid[r] != 0);
          val[pivot_col_of_row[r]] = resid[r];
        }
        for (int i = 0; i < nf; i++) val[free_cols[i]] = fval[i];
        return val;
      }
      if (choice[depth] >= 2) {
        choice[depth] = 0;
        if (depth == 0) return std::nullopt;
        depth--;
        unassign(depth);
        choice[depth]++;
        continue;
      }
      int v = choice[depth] == 0 ? 1 : 2;
      if (assign(depth, v)) {
        depth++;
      } else {
        unassign(depth);
        choice[depth]++;
      }
    }
  }
};

Orientation to_orientation(const Multigraph& g, const std::vector<int>& cols_ids,
                           const std::vector<int>& val) {
  Orientation o;
  o.graph = g;
  std::map<int, int> sigma;
  for (size_t i = 0; i < cols_ids.size(); i++) sigma[cols_ids[i]] = val[i];
  for (const Edge& e : g.edges()) {
    if (e.is_loop())
      o.forward[e.id] = true;
    else
      o.forward[e.id] = sigma[e.id] == 1;
  }
  return o;
}

}  // namespace

std::optional<Orientation> orientation_with_targets(const Multigraph& g,
                                                    const std::map<int, int>& targets) {
  long long sum = 0;
  bool all_zero = true;
  for (auto& [v, t] : targets) {
    sum += m3(t);
    if (m3(t) != 0) all_zero = false;
  }
  if (sum % 3 != 0)
    throw invalid_input("orientation_with_targets: targets do not sum to 0 mod 3");
  // a bridge forces excess sum +-1 across it, impossible with all-zero targets
  if (all_zero && !bridges(g).empty()) return std::nullopt;
  Gf3Solver s(g);
  s.set_targets(targets);
  auto val = s.solve();
  if (!val) return std::nullopt;
  Orientation o = to_orientation(g, s.cols, *val);
  assert(check_targets(o, targets));
  return o;
}

std::optional<Orientation> mod3_orientation(const Multigraph& g) {
  return orientation_with_targets(g, {});
}

bool check_mod3(const Orientation& o) {
  for (int v : o.graph.vertices())
    if (m3(o.excess(v)) != 0) return false;
  return true;
}

bool check_targets(const Orientation& o, const std::map<int, int>& targets) {
  for (int v : o.graph.vertices()) {
    int want = 0;
    auto it = targets.find(v);
    if (it != targets.end()) want = m3(it->second);
    if (m3(o.excess(v)) != want) return false;
  }
  return true;
}

std::optional<Z3Flow> nz3_flow(const Multigraph& g) {
  auto o = mod3_orientation(g);
  if (!o) return std::nullopt;
  return flow_from_orientation(*o);
}

Z3Flow flow_from_orientation(const Orientation& o) {
  Z3Flow f;
  f.orientation = o;
  for (const Edge& e : o.graph.edges()) f.value[e.id] = 1;
  assert(check_flow(f));
  return f;
}

Orientation orientation_from_flow(const Z3Flow& f) {
  Orientation o;
  o.graph = f.orientation.graph;
  for (const Edge& e : o.graph.edges()) {
    bool fwd = f.orientation.forward.at(e.id);
    if (f.value.at(e.id) == 2) fwd = !fwd;  // a 2-arc is a reversed 1-arc
    o.forward[e.id] = fwd;
  }
  assert(check_mod3(o));
  return o;
}

bool check_flow(const Z3Flow& f) {
  for (auto& [id, v] : f.value)
    if (v != 1 && v != 2) return false;
  for (int v : f.orientation.graph.vertices()) {
    int s = 0;
    for (const Edge& e : f.orientation.graph.edges()) {
      if (e.is_loop()) continue;
      if (f.orientation.tail(e.id) == v) s += f.value.at(e.id);
      if (f.orientation.head(e.id) == v) s -= f.value.at(e.id);
    }
    if (m3(s) != 0) return false;
  }
  return true;
}

bool is_z3_connected(const Multigraph& g, int guard_vertices) {
  int n = g.vertex_count();
  if (n > guard_vertices)
    throw guard_exceeded("is_z3_connected: " + std::to_string(n) +
                         " vertices, guard is " + std::to_string(guard_vertices));
  if (n == 0) return true;
  std::vector<int> vs = g.vertices();
  // enumerate targets on all but the last vertex; the last is forced by the
  // zero-sum condition
  long long total = 1;
  for (int i = 0; i + 1 < n; i++) total *= 3;
  for (long long code = 0; code < total; code++) {
    std::map<int, int> t;
    long long c = code;
    int sum = 0;
    for (int i = 0; i + 1 < n; i++) {
      int ti = (int)(c % 3);
      c /= 3;
      t[vs[i]] = ti;
      sum += ti;
    }
    t[vs[n - 1]] = m3(-sum);
    if (!orientation_with_targets(g, t)) return false;
  }
  return true;
}

std::optional<NearMod3> near_mod3_orientation(const Multigraph& g, int u1, int u2) {
  if (!g.has_vertex(u1) || !g.has_vertex(u2) || u1 == u2)
    throw invalid_input("near_mod3_orientation needs two distinct vertices of g");
  for (int alpha : {1, 2}) {
    std::map<int, int> t{{u1, alpha}, {u2, m3(-alpha)}};
    auto o = orientation_with_targets(g, t);
    if (o) return NearMod3{*o, alpha};
  }
  return std::nullopt;
}

bool is_vertex_3_critical(const Multigraph& g) {
  if (mod3_orientation(g)) return false;
  const auto& vs = g.vertices();
  for (size_t i = 0; i < vs.size(); i++)
    for (size_t j = i + 1; j < vs.size(); j++)
      if (!mod3_orientation(identify(g, {vs[i], vs[j]}))) return false;
  return true;
}

bool is_edge_3_critical(const Multigraph& g) {
  if (mod3_orientation(g)) return false;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    if (!mod3_orientation(contract_edge(g, e.id))) return false;
  }
  return true;
}

Multigraph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw invalid_input("complete_bipartite needs positive sides");
  Multigraph g;
  for (int i = 0; i < m + n; i++) g.add_vertex(i);
  for (int a = 0; a < m; a++)
    for (int b = 0; b < n; b++) g.add_edge(a * n + b, a, m + b);
  return g;
}

namespace {

// dir[a][b] = +1 for a->b, -1 for b->a, on K_{m,n} with sides A=0..m-1,
// B=0..n-1 (local indexing)
std::vector<std::vector<int>> kmn_dirs(int m, int n) {
  if (m < n) {
    auto t = kmn_dirs(n, m);
    std::vector<std::vector<int>> d(m, std::vector<int>(n));
    for (int a = 0; a < m; a++)
      for (int b = 0; b < n; b++) d[a][b] = -t[b][a];
    return d;
  }
  // m >= n >= 2
  if (m == 2 && n == 2) {
    // four-cycle a0 -> b0 -> a1 -> b1 -> a0
    return {{+1, -1}, {-1, +1}};
  }
  if (m == 3 && n == 2) {
    // b0 a source, b1 a sink; every A vertex balanced
    return {{-1, +1}, {-1, +1}, {-1, +1}};
  }
  if (m == 3 && n == 3) {
    // all arcs A -> B: excess +3 / -3 everywhere
    return {{+1, +1, +1}, {+1, +1, +1}, {+1, +1, +1}};
  }
  // split the larger side into 2 and m-2, both >= 2
  auto top = kmn_dirs(2, n);
  auto rest = kmn_dirs(m - 2, n);
  std::vector<std::vector<int>> d;
  d.insert(d.end(), top.begin(), top.end());
  d.insert(d.end(), rest.begin(), rest.end());
  return d;
}

}  // namespace

Orientation kmn_mod3_orientation(int m, int n) {
  if (m < 2 || n < 2)
    throw invalid_input("kmn_mod3_orientation needs both sides >= 2");
  auto d = kmn_dirs(m, n);
  Orientation o;
  o.graph = complete_bipartite(m, n);
  for (int a = 0; a < m; a++)
    for (int b = 0; b < n; b++) o.forward[a * n + b] = d[a][b] > 0;
  if (!check_mod3(o)) throw error("kmn_mod3_orientation produced invalid excesses");
  return o;
}

Multigraph induced_subgraph(const Multigraph& g, const std::vector<int>& verts) {
  std::set<int> vs(verts.begin(), verts.end());
  Multigraph h;
  for (int v : g.vertices())
    if (vs.count(v)) h.add_vertex(v);
  for (const Edge& e : g.edges())
    if (vs.count(e.u) && vs.count(e.v)) h.add_edge(e.id, e.u, e.v);
  return h;
}

std::optional<MincutReduction> mincut_reduction(const Multigraph& g) {
  if (!g.is_connected()) throw invalid_input("mincut_reduction: disconnected graph");
  if (!bridges(g).empty()) throw invalid_input("mincut_reduction: graph has a bridge");
  const auto& es = g.edges();
  int m = (int)es.size();
  // 2-cuts first (in lexicographic id order), then 3-cuts
  std::vector<std::vector<int>> cands;
  for (int i = 0; i < m; i++)
    for (int j = i + 1; j < m; j++) cands.push_back({es[i].id, es[j].id});
  for (int i = 0; i < m; i++)
    for (int j = i + 1; j < m; j++)
      for (int k = j + 1; k < m; k++) cands.push_back({es[i].id, es[j].id, es[k].id});
  for (const auto& S : cands) {
    std::set<int> cut(S.begin(), S.end());
    Multigraph h;
    for (int v : g.vertices()) h.add_vertex(v);
    for (const Edge& e : g.edges())
      if (!cut.count(e.id)) h.add_edge(e.id, e.u, e.v);
    auto comp = h.components();
    int nc = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    if (nc != 2) continue;
    std::vector<int> x, y;
    for (size_t i = 0; i < comp.size(); i++)
      (comp[i] == 0 ? x : y).push_back(h.vertices()[i]);
    if (x.size() < 2 || y.size() < 2) continue;
    // inclusion-minimal: every cut edge must join the two sides
    std::set<int> xs(x.begin(), x.end());
    bool minimal = true;
    for (int eid : S) {
      const Edge& e = g.edge(eid);
      if (e.is_loop() || (xs.count(e.u) > 0) == (xs.count(e.v) > 0)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    MincutReduction r;
    r.cut_edges = S;
    r.side_x = x;
    r.side_y = y;
    r.contracted_x = identify(g, x);
    r.contracted_y = identify(g, y);
    return r;
  }
  return std::nullopt;
}

Multigraph z3_subgraph_reduction(const Multigraph& g, const std::vector<int>& hverts,
                                 int guard_vertices) {
  Multigraph h = induced_subgraph(g, hverts);
  if (!is_z3_connected(h, guard_vertices))
    throw invalid_input("z3_subgraph_reduction: subgraph is not Z3-connected");
  return identify(g, hverts);
}

}  // namespace facetint
