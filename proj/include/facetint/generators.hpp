#pragma once

#include <optional>

#include "facetint/multigraph.hpp"

namespace facetint {

// standard constructions with deterministic ids

// n >= 1: vertices 0..n-1, edge i joins i and (i+1) mod n; n=1 is a loop,
// n=2 a digon
Multigraph cycle_graph(int n);

Multigraph complete_graph(int n);

// rim 0..n-1 with edge i = (i, i+1 mod n), hub n with spoke n+i = (n, i)
Multigraph wheel_graph(int n);

Multigraph petersen_graph();

// K_{3,n} plus one edge inside the 3-side: vertices 0,1,2 and 3..n+2,
// bipartite edge i*n+j joins i and 3+j, special edge 3n joins 0 and 1
Multigraph k3nplus(int n);

struct K3nPlusStructure {
    std::vector<int> a;  // the 3-side; a[0], a[1] carry the special edge
    int special_edge;
    std::vector<int> b;  // the n-side, sorted
};

// recognizes graphs isomorphic to K_{3,n}^+ with n >= 4
std::optional<K3nPlusStructure> k3nplus_structure(const Multigraph& g);

// all connected cubic simple graphs on exactly n vertices, one per
// isomorphism class, in a deterministic order. Works by pairing every
// perfect matching with every canonical cycle cover; that reaches every
// cubic graph up to 14 vertices, since the smallest cubic graph without a
// perfect matching has 16. Larger n throws guard_exceeded.
std::vector<Multigraph> connected_cubic_graphs(int n);

}  // namespace facetint
