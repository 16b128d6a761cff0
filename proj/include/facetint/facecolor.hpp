#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "facetint/drawing.hpp"
#include "facetint/flow3.hpp"

namespace facetint {

// coloring of the faces of a planarized drawing, indexed in canonical face
// order (the order faces() reports)
struct FaceColoring {
    int k = 0;
    std::vector<int> color;  // face index -> color in [0, k)
};

// per-segment check: the two sides of every segment get different colors
bool check_coloring(const PlanarizedDrawing& d, const FaceColoring& c);

// exact face-k-coloring for k in {2,3,4}, backtracking on the dual with
// saturation-degree ordering; a face touching itself across a segment rules
// out every k. The outer face is anchored to color 0.
std::optional<FaceColoring> color_faces_exact(const PlanarizedDrawing& d, int k);

// exists iff the underlying graph is Eulerian; built by parity BFS of the
// dual from the outer face, which gets color 0
std::optional<FaceColoring> face_2_coloring(const PlanarizedDrawing& d);

// transfer an orientation of the underlying graph to the planarization by
// directing every segment along its trail. Crossings end up with excess 0;
// normal vertices keep the excess they had abstractly.
Orientation lift_orientation(const PlanarizedDrawing& d, const Orientation& o);

// potential construction from an orientation of the planarization with all
// excesses divisible by 3: outer face 0, and stepping across a segment whose
// left side is the already-colored face adds +1 mod 3
FaceColoring coloring_from_mod3(const PlanarizedDrawing& d, const Orientation& po);

// direct every segment so that color(left) - color(right) = 1 mod 3; the
// result has all excesses divisible by 3
Orientation mod3_from_coloring(const PlanarizedDrawing& d, const FaceColoring& c);

// every normal vertex on the outer face and no bridge in the underlying
// graph: 3-coloring via an auxiliary vertex joined to the odd-degree
// vertices inside the outer face, a 2-coloring of that graph, and color 2 on
// the outer face
FaceColoring outerface_3coloring(const PlanarizedDrawing& d);

// min degree >= 2: peel cycles, reroute one edge per cycle through a single
// shared crossing point, and 3-color the resulting drawing
std::pair<PlanarizedDrawing, FaceColoring> leafless_3colorable_drawing(const Multigraph& g);

// good drawing of K_{3,n}^+ with n >= 4: face-3-coloring built from a
// crossing between the two long sides, a mod-3 orientation of the rerouted
// graph, and the lift
FaceColoring k3nplus_coloring(const PlanarizedDrawing& d);

}  // namespace facetint
