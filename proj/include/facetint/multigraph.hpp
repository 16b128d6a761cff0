#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace facetint {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad or inconsistent input data (file contents, drawings, preconditions)
struct invalid_input : error {
  using error::error;
};

// a configurable size guard was exceeded, not a mathematical "no"
struct guard_exceeded : error {
  using error::error;
};

struct Edge {
  int id = -1;
  int u = -1;
  int v = -1;
  bool is_loop() const { return u == v; }
  int other(int w) const { return w == u ? v : u; }
};

// Undirected multigraph. Parallel edges and loops allowed. Vertex and edge
// ids are arbitrary non-negative integers, kept stable under identify().
class Multigraph {
 public:
  Multigraph() = default;

  void add_vertex(int id);
  // endpoints must exist already; edge id must be fresh
  void add_edge(int id, int u, int v);

  bool has_vertex(int id) const;
  bool has_edge(int id) const;
  const Edge& edge(int id) const;

  const std::vector<int>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int vertex_count() const { return (int)verts_.size(); }
  int edge_count() const { return (int)edges_.size(); }

  // loops count twice
  int degree(int v) const;
  std::vector<int> incident_edges(int v) const;

  bool is_connected() const;
  int component_count() const;
  // component id per vertex, in vertices() order
  std::vector<int> components() const;

  bool operator==(const Multigraph& o) const {
    return verts_ == o.verts_ && edge_triples() == o.edge_triples();
  }

  std::vector<std::array<int, 3>> edge_triples() const;

 private:
  std::vector<int> verts_;       // sorted
  std::vector<Edge> edges_;      // sorted by id
  int vert_pos(int id) const;    // -1 if absent
  int edge_pos(int id) const;
  friend class AdjacencyView;
};

// every vertex has even degree (loops contribute 2); no connectivity demand
bool is_eulerian(const Multigraph& g);

// edge ids of all bridges; loops and parallel-doubled edges are never bridges
std::vector<int> bridges(const Multigraph& g);

bool is_bipartite(const Multigraph& g);
// two-sides witness if bipartite: vertex -> 0/1 in vertices() order
std::optional<std::vector<int>> bipartition(const Multigraph& g);


// G/X: replace the vertex set X by a single vertex carrying the smallest id
// in X; edges inside X (loops included) are deleted, edges leaving X are
// reattached. Never creates loops at the merged vertex.
Multigraph identify(const Multigraph& g, const std::vector<int>& X);

// identify the endpoints of edge e; rejects loops
Multigraph contract_edge(const Multigraph& g, int e);

struct CutWitness {
  std::vector<int> cut_edges;  // exactly the edges between side_x and side_y
  std::vector<int> side_x;
  std::vector<int> side_y;
};

struct EdgeConnectivity {
  int lambda = 0;    // exact value if exact, else a lower bound (ceiling+1)
  bool exact = true;
  std::optional<CutWitness> witness;  // present when exact and lambda < inf
};

// global edge connectivity, exact if <= ceiling, otherwise reported as
// ceiling+1 with exact=false. Disconnected graphs give 0 with a component
// witness. Loops are ignored. A single-vertex graph has no cut at all.
EdgeConnectivity edge_connectivity(const Multigraph& g, int ceiling);

struct SubcontractionWitness {
  // class_of[i] = pattern vertex assigned to vertices()[i]
  std::vector<int> class_of;
};

// Surjection search: classes keyed by pattern vertices; number of g-edges
// between two distinct classes must be >= the pattern multiplicity (pattern
// loops need a singleton class with enough loops). Classes may be
// disconnected. Guard on |V(g)|.
std::optional<SubcontractionWitness> has_subcontraction(
    const Multigraph& g, const Multigraph& pattern, int guard_vertices = 16);

// Strict variant: inter-class edge counts must match the pattern exactly
// (zeros included), so the quotient graph is isomorphic to the pattern.
// This is what a chain of identify() steps can literally reach.
std::optional<SubcontractionWitness> exact_subcontraction(
    const Multigraph& g, const Multigraph& pattern, int guard_vertices = 16);

struct MinorWitness {
  // pattern vertex -> connected branch set of g vertices
  std::vector<std::vector<int>> branch_sets;
};

// classical minor test (connected branch sets, one g-edge per pattern edge
// multiplicity). Guard on |V(g)|.
std::optional<MinorWitness> has_minor(const Multigraph& g,
                                      const Multigraph& pattern,
                                      int guard_vertices = 20);

// permutation-canonical edge multiset, usable for isomorphism tests on
// small graphs only (factorial in |V|)
std::string canonical_form(const Multigraph& g, int max_vertices = 10);

}  // namespace facetint
