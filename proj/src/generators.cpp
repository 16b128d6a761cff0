#include "facetint/generators.hpp"

#include "facetint/flow3.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace facetint {

Multigraph cycle_graph(int n) {
    if (n < 1) throw invalid_input("cycle_graph: n must be at least 1");
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i) g.add_edge(i, i, (i + 1) % n);
    return g;
}

Multigraph complete_graph(int n) {
    if (n < 1) throw invalid_input("complete_graph: n must be at least 1");
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    int id = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(id++, i, j);
    return g;
}

Multigraph wheel_graph(int n) {
    if (n < 3) throw invalid_input("wheel_graph: rim needs at least 3 vertices");
    Multigraph g;
    for (int i = 0; i <= n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i) g.add_edge(i, i, (i + 1) % n);
    for (int i = 0; i < n; ++i) g.add_edge(n + i, n, i);
    return g;
}

Multigraph petersen_graph() {
    Multigraph g;
    for (int i = 0; i < 10; ++i) g.add_vertex(i);
    for (int i = 0; i < 5; ++i) g.add_edge(i, i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) g.add_edge(5 + i, i, 5 + i);
    for (int i = 0; i < 5; ++i) g.add_edge(10 + i, 5 + i, 5 + (i + 2) % 5);
    return g;
}

Multigraph k3nplus(int n) {
    if (n < 1) throw invalid_input("k3nplus: n must be at least 1");
    Multigraph g = complete_bipartite(3, n);
    g.add_edge(3 * n, 0, 1);
    return g;
}

std::optional<K3nPlusStructure> k3nplus_structure(const Multigraph& g) {
    std::vector<int> a, b;
    for (int v : g.vertices())
        (g.degree(v) == 3 ? b : a).push_back(v);
    if (a.size() != 3 || b.size() < 4) return std::nullopt;
    std::set<int> aset(a.begin(), a.end());

    int special = -1;
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) return std::nullopt;
        bool ua = aset.count(e.u), va = aset.count(e.v);
        if (ua && va) {
            if (special >= 0) return std::nullopt;
            special = e.id;
        } else if (!ua && !va) {
            return std::nullopt;
        }
    }
    if (special < 0) return std::nullopt;

    // every b-vertex sees each a-vertex exactly once
    for (int v : b) {
        std::set<int> seen;
        for (int eid : g.incident_edges(v)) {
            const Edge& e = g.edge(eid);
            if (!seen.insert(e.other(v)).second) return std::nullopt;
        }
        if ((int)seen.size() != 3) return std::nullopt;
    }
    // degree bookkeeping: the two special endpoints have degree n+1, the
    // third has degree n, and with n >= 4 none of these is 3
    int n = (int)b.size();
    const Edge& se = g.edge(special);
    K3nPlusStructure out;
    out.a = {std::min(se.u, se.v), std::max(se.u, se.v), -1};
    for (int v : a)
        if (v != se.u && v != se.v) out.a[2] = v;
    if (g.degree(out.a[0]) != n + 1 || g.degree(out.a[1]) != n + 1 ||
        g.degree(out.a[2]) != n)
        return std::nullopt;
    out.special_edge = special;
    out.b = b;
    return out;
}

namespace {

using adj = std::vector<std::vector<int>>;

// partitions of n into parts >= 3, non-increasing
void cycle_types(int n, int max_part, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 3; --p) {
        if (n - p != 0 && n - p < 3) continue;
        cur.push_back(p);
        cycle_types(n - p, p, cur, out);
        cur.pop_back();
    }
}

void all_matchings(int n, const std::vector<std::vector<bool>>& forbidden,
                   std::vector<bool>& used, std::vector<std::pair<int, int>>& cur,
                   const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
    int u = 0;
    while (u < n && used[u]) ++u;
    if (u == n) {
        emit(cur);
        return;
    }
    used[u] = true;
    for (int v = u + 1; v < n; ++v) {
        if (used[v] || forbidden[u][v]) continue;
        used[v] = true;
        cur.push_back({u, v});
        all_matchings(n, forbidden, used, cur, emit);
        cur.pop_back();
        used[v] = false;
    }
    used[u] = false;
}

// sorted distance profile plus short cycle counts; equal for isomorphic graphs
std::vector<int> vertex_profile(const adj& a, int v) {
    int n = (int)a.size();
    std::vector<int> dist(n, n);
    dist[v] = 0;
    std::vector<int> q = {v};
    for (size_t h = 0; h < q.size(); ++h)
        for (int w : a[q[h]])
            if (dist[w] == n) dist[w] = dist[q[h]] + 1, q.push_back(w);
    int tri = 0, quad = 0;
    for (int x : a[v])
        for (int y : a[v]) {
            if (x >= y) continue;
            for (int z : a[x])
                if (z == y) ++tri;
            for (int z : a[x])
                for (int w : a[y])
                    if (z == w && z != v) ++quad;
        }
    std::sort(dist.begin(), dist.end());
    dist.push_back(tri);
    dist.push_back(quad);
    return dist;
}

std::vector<std::vector<int>> graph_profile(const adj& a) {
    std::vector<std::vector<int>> p;
    for (int v = 0; v < (int)a.size(); ++v) p.push_back(vertex_profile(a, v));
    std::sort(p.begin(), p.end());
    return p;
}

bool extend_iso(const adj& a, const adj& b, const std::vector<int>& order,
                const std::vector<int>& parent, size_t k, std::vector<int>& img,
                std::vector<bool>& taken) {
    if (k == order.size()) return true;
    int v = order[k];
    std::vector<int> cands;
    if (parent[v] < 0) {
        for (int w = 0; w < (int)b.size(); ++w) cands.push_back(w);
    } else {
        cands = b[img[parent[v]]];
    }
    for (int w : cands) {
        if (taken[w]) continue;
        bool ok = true;
        for (int x : a[v]) {
            if (img[x] < 0) continue;
            bool edge = false;
            for (int y : b[w])
                if (y == img[x]) edge = true;
            if (!edge) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        img[v] = w;
        taken[w] = true;
        if (extend_iso(a, b, order, parent, k + 1, img, taken)) return true;
        img[v] = -1;
        taken[w] = false;
    }
    return false;
}

bool cubic_isomorphic(const adj& a, const adj& b) {
    int n = (int)a.size();
    if ((int)b.size() != n) return false;
    // BFS order of a with parent pointers; images then follow neighborhoods
    std::vector<int> order = {0}, parent(n, -1);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (size_t h = 0; h < order.size(); ++h)
        for (int w : a[order[h]])
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = order[h];
                order.push_back(w);
            }
    std::vector<int> img(n, -1);
    std::vector<bool> taken(n, false);
    return extend_iso(a, b, order, parent, 0, img, taken);
}

}  // namespace

std::vector<Multigraph> connected_cubic_graphs(int n) {
    if (n > 14)
        throw guard_exceeded("connected_cubic_graphs: matching decomposition only covers n <= 14");
    std::vector<Multigraph> out;
    if (n < 4 || n % 2) return out;

    std::vector<std::vector<int>> types;
    std::vector<int> cur;
    cycle_types(n, n, cur, types);

    std::vector<adj> reps;
    std::vector<std::vector<std::vector<int>>> rep_profiles;

    for (const auto& type : types) {
        std::vector<std::pair<int, int>> cyc;
        std::vector<std::vector<bool>> forbidden(n, std::vector<bool>(n, false));
        int start = 0;
        for (int len : type) {
            for (int i = 0; i < len; ++i) {
                int u = start + i, v = start + (i + 1) % len;
                cyc.push_back({std::min(u, v), std::max(u, v)});
                forbidden[u][v] = forbidden[v][u] = true;
            }
            start += len;
        }
        std::vector<bool> used(n, false);
        std::vector<std::pair<int, int>> m;
        all_matchings(n, forbidden, used, m,
                      [&](const std::vector<std::pair<int, int>>& match) {
            adj a(n);
            for (auto [u, v] : cyc) a[u].push_back(v), a[v].push_back(u);
            for (auto [u, v] : match) a[u].push_back(v), a[v].push_back(u);
            // connectivity
            std::vector<bool> vis(n, false);
            std::vector<int> q = {0};
            vis[0] = true;
            for (size_t h = 0; h < q.size(); ++h)
                for (int w : a[q[h]])
                    if (!vis[w]) vis[w] = true, q.push_back(w);
            if ((int)q.size() != n) return;

            auto prof = graph_profile(a);
            for (size_t r = 0; r < reps.size(); ++r)
                if (rep_profiles[r] == prof && cubic_isomorphic(a, reps[r])) return;
            reps.push_back(a);
            rep_profiles.push_back(prof);

            Multigraph g;
            for (int i = 0; i < n; ++i) g.add_vertex(i);
            int id = 0;
            for (auto [u, v] : cyc) g.add_edge(id++, u, v);
            for (auto [u, v] : match) g.add_edge(id++, u, v);
            out.push_back(g);
        });
    }
    return out;
}

}  // namespace facetint
