#pragma once

#include <map>
#include <vector>

#include "facetint/drawing.hpp"
#include "facetint/facecolor.hpp"

namespace facetint {

// Surgical repair of drawing defects. Every operation keeps the underlying
// multigraph untouched, validates its own preconditions, and records enough
// bookkeeping to pull a face coloring of its output back to its input.

enum class surgery_op {
    split_multicrossing,
    remove_touching,
    reroute_self_intersection,
    uncross_adjacent,
    uncross_double,
    isolate_loop,
};

const char* surgery_op_name(surgery_op op);

struct SurgeryStep {
    surgery_op op;
    int site = -1;  // planar vertex acted on; -1 for isolate_loop
    int e1 = -1;    // involved edges; -1 when not applicable
    int e2 = -1;
    long triples_before = 0;
    long triples_after = 0;
    int touchings_before = 0;
    int touchings_after = 0;

    // how a coloring of the output pulls back to the input
    enum class transfer_kind {
        identity,       // faces unchanged (trail rewiring only)
        face_preimage,  // input face -> output face, colors copied back
        reorient,       // via a modulo-3 orientation carried across `cover`
    };
    transfer_kind transfer = transfer_kind::identity;
    std::vector<int> face_map;                     // face_preimage: input face -> output face
    std::map<int, std::vector<trail_step>> cover;  // output seg -> walk of input segs
};

struct SurgeryOutcome {
    PlanarizedDrawing drawing;
    SurgeryStep step;
};

// 4-valent crossings with two passes that do not alternate around the vertex,
// whatever the pass edges are. These are exactly the sites remove_touching
// accepts; every trail rewiring surgery leaves one at its site.
std::vector<int> touching_sites(const PlanarizedDrawing& d);

// crossing with t >= 3 passes: spread the passes over a small disk so that the
// interleaved pairs cross once each at fresh 4-valent crossings and the rest
// separate cleanly
SurgeryOutcome split_multicrossing(const PlanarizedDrawing& d, int site);

// dissolve a touching: both passes are fused straight through and the two
// wedge faces between them merge into one
SurgeryOutcome remove_touching(const PlanarizedDrawing& d, int site);

// proper self-crossing of one trail: reverse the closed sub-walk between the
// two visits, which re-pairs the four ends into a touching
SurgeryOutcome reroute_self_intersection(const PlanarizedDrawing& d, int site);

// proper crossing of two distinct non-loop edges sharing an endpoint: swap the
// trail parts on the shared-endpoint side, turning the site into a touching
SurgeryOutcome uncross_adjacent(const PlanarizedDrawing& d, int site);

// two edges with no common endpoint crossing properly at least twice: swap the
// trail parts between the first two crossings along e1, turning both into
// touchings
SurgeryOutcome uncross_double(const PlanarizedDrawing& d, int e1, int e2);

// loop whose trail crosses other trails: erase the loop's curve, smooth what
// remains, and redraw the loop as a tiny crossing-free lobe at its vertex,
// inside the incident face with the largest boundary orbit
SurgeryOutcome isolate_loop(const PlanarizedDrawing& d, int edge_id);

struct NormalizeResult {
    PlanarizedDrawing drawing;  // good drawing of the same multigraph
    std::vector<SurgeryStep> steps;
    std::vector<PlanarizedDrawing> before;  // the drawing each step was applied to
};

// drive the surgeries to a good drawing: multi-crossings are split first, then
// touchings, self-intersections, loop crossings, adjacent crossings, and
// double crossings, rescanning after every step
NormalizeResult normalize(const PlanarizedDrawing& d);

// pull a proper 3-coloring of r.drawing back through every step in reverse
FaceColoring transfer_coloring(const NormalizeResult& r, const FaceColoring& c);

}  // namespace facetint
