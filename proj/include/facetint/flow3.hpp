#pragma once

#include <map>
#include <optional>

#include "facetint/multigraph.hpp"

namespace facetint {

// Orientation of a multigraph: per edge, whether it runs u->v as stored.
// excess(v) = outdegree - indegree. Loops are directionless (excess 0).
struct Orientation {
  Multigraph graph;
  std::map<int, bool> forward;  // edge id -> true if tail=u, head=v

  int tail(int eid) const {
    const Edge& e = graph.edge(eid);
    return forward.at(eid) ? e.u : e.v;
  }
  int head(int eid) const {
    const Edge& e = graph.edge(eid);
    return forward.at(eid) ? e.v : e.u;
  }
  int excess(int v) const;
  // flip every arc; negates all excesses
  Orientation reversed() const;
};

// flow with values in {1,2} on oriented arcs; conservation at every vertex
struct Z3Flow {
  Orientation orientation;
  std::map<int, int> value;  // edge id -> 1 or 2
};

// all excesses congruent to targets mod 3; empty targets mean all-zero
std::optional<Orientation> orientation_with_targets(const Multigraph& g,
                                                    const std::map<int, int>& targets);

// orientation with every excess divisible by 3
std::optional<Orientation> mod3_orientation(const Multigraph& g);

// nowhere-zero 3-flow; interconvertible with mod3_orientation by rewriting
// value-2 arcs as reversed value-1 arcs
std::optional<Z3Flow> nz3_flow(const Multigraph& g);

Orientation orientation_from_flow(const Z3Flow& f);
Z3Flow flow_from_orientation(const Orientation& o);

bool check_mod3(const Orientation& o);
bool check_targets(const Orientation& o, const std::map<int, int>& targets);
bool check_flow(const Z3Flow& f);

// every zero-sum target vector is realizable. Guarded: 3^(n-1) solver calls.
bool is_z3_connected(const Multigraph& g, int guard_vertices = 10);

// excess alpha at u1 and -alpha at u2 (mod 3), zero elsewhere. Reversing all
// arcs flips alpha between 1 and 2.
struct NearMod3 {
  Orientation orientation;
  int alpha;  // 1 or 2
};
std::optional<NearMod3> near_mod3_orientation(const Multigraph& g, int u1, int u2);

// g has no nz 3-flow but every pair identification g/{u,v} does
bool is_vertex_3_critical(const Multigraph& g);
// g has no nz 3-flow but every non-loop edge contraction does
bool is_edge_3_critical(const Multigraph& g);

Multigraph complete_bipartite(int m, int n);

// constructive mod-3 orientation of the canonical K_{m,n}, m,n >= 2;
// recursive split with stored small bases, no solver involved
Orientation kmn_mod3_orientation(int m, int n);

// both identifications G/X1, G/X2 for an inclusion-minimal cut S with
// |S| <= 3 and both sides of size >= 2; lexicographically least such cut by
// sorted edge ids. Requires bridgeless g.
struct MincutReduction {
  std::vector<int> cut_edges;
  std::vector<int> side_x, side_y;
  Multigraph contracted_x;  // g / side_x
  Multigraph contracted_y;  // g / side_y
};
std::optional<MincutReduction> mincut_reduction(const Multigraph& g);

// verify the induced subgraph on hverts is Z3-connected, then identify it
Multigraph z3_subgraph_reduction(const Multigraph& g, const std::vector<int>& hverts,
                                 int guard_vertices = 10);

Multigraph induced_subgraph(const Multigraph& g, const std::vector<int>& verts);

}  // namespace facetint
