#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facetint/geometry.hpp"
#include "facetint/multigraph.hpp"

namespace facetint {

// Planarized drawings are purely combinatorial. Darts are numbered 2s and
// 2s+1 for segment s (2s originates at the segment's pu end); twin(d) = d^1.
// Rotations list darts clockwise around each planar vertex; the face to the
// left of a dart is traced by successor(d) = rotation-next(twin(d)).

enum class pv_kind { normal, crossing };

struct planar_vertex {
    pv_kind kind;
    int orig;  // abstract vertex id for normal vertices, -1 for crossings
};

struct segment {
    int pu;
    int pv;
};

struct trail_step {
    int seg;
    bool rev;  // true: traversed pv -> pu

    bool operator==(const trail_step& o) const { return seg == o.seg && rev == o.rev; }
};

struct FaceStructure {
    std::vector<std::vector<int>> orbits;  // each starts at its minimal dart
    int outer = -1;
};

struct PlanarizedDrawing {
    Multigraph underlying;
    std::vector<planar_vertex> verts;
    std::vector<segment> segs;
    std::vector<std::vector<int>> rot;      // clockwise darts per planar vertex
    std::map<int, std::vector<trail_step>> trails;  // abstract edge id -> steps
    int outer = -1;                         // canonical face index

    // filled by finalize()
    std::vector<std::vector<int>> face_orbits;
    std::vector<int> face_of_dart;
    std::map<int, int> pv_of_vertex;

    int dart_count() const { return 2 * (int)segs.size(); }
    int twin(int d) const { return d ^ 1; }
    int seg_of(int d) const { return d / 2; }
    int origin(int d) const { const segment& s = segs[d / 2]; return (d & 1) ? s.pv : s.pu; }
    int rotation_next(int d) const;
    int face_successor(int d) const { return rotation_next(twin(d)); }
    int face_count() const { return (int)face_orbits.size(); }

    // dart at the start of a step, oriented along the traversal
    static int step_start_dart(const trail_step& t) { return 2 * t.seg + (t.rev ? 1 : 0); }
    // dart at the far end of a step (origin = the planar vertex the step arrives at)
    static int step_end_dart(const trail_step& t) { return 2 * t.seg + (t.rev ? 0 : 1); }

    int step_from(const trail_step& t) const { return origin(step_start_dart(t)); }
    int step_to(const trail_step& t) const { return origin(step_end_dart(t)); }

    // sequence of planar vertices visited by an edge's trail, endpoints included
    std::vector<int> trail_vertices(int edge_id) const;

    // canonicalize rotations, recompute faces, check every invariant;
    // throws invalid_input on any violation
    void finalize();

    FaceStructure faces() const { return {face_orbits, outer}; }
};

// one pass of a trail through a crossing vertex
struct crossing_pass {
    int edge;
    int step_after;  // index into the trail: the step leaving the crossing
    int in_dart;     // dart at the crossing belonging to the arriving step
    int out_dart;    // dart at the crossing belonging to the leaving step
};

std::vector<crossing_pass> passes_through(const PlanarizedDrawing& d, int x);

Multigraph dual(const PlanarizedDrawing& d);

// the planarization as an abstract multigraph: vertex ids are planar vertex
// indices, edge ids are segment indices with u = pu, v = pv
Multigraph planarization_graph(const PlanarizedDrawing& d);

enum class violation_kind {
    multi_crossing,
    self_intersection,
    loop_crossing,
    adjacent_crossing,
    double_crossing,
    touching,
};

struct violation {
    violation_kind kind;
    int e1;
    int e2;
    int pv;
};

const char* violation_name(violation_kind k);

std::vector<violation> find_violations(const PlanarizedDrawing& d);
std::pair<bool, std::vector<violation>> is_good_drawing(const PlanarizedDrawing& d);

long crossing_triples(const PlanarizedDrawing& d);

std::pair<PlanarizedDrawing, Multigraph> place_vertex_at_crossing(const PlanarizedDrawing& d,
                                                                  int x);

// crossing-free plane map from an abstract graph plus clockwise rotations.
// Rotation entries are (edge id, end) with end 0 = the u end, 1 = the v end;
// loops contribute both ends at their vertex.
PlanarizedDrawing make_plane_drawing(const Multigraph& g,
                                     const std::map<int, std::vector<std::pair<int, int>>>& rotations,
                                     int outer_face = 0);

// brute-force search over rotation systems for one satisfying Euler's formula;
// intended for small graphs (guard limits the product of (deg-1)! factors)
std::optional<PlanarizedDrawing> find_planar_embedding(const Multigraph& g,
                                                       long guard = 2000000L);

// label-respecting isomorphism code for planarized drawings (orientation-preserving)
std::string canonical_map_string(const PlanarizedDrawing& d);

// --- geometric frontend ---

struct PolylineDrawing {
    Multigraph graph;
    std::map<int, point> position;            // vertex -> image
    std::map<int, std::vector<point>> curve;  // edge -> polyline, tail image first
};

PlanarizedDrawing ingest_polylines(const PolylineDrawing& p);

PolylineDrawing circle_drawing(const Multigraph& g, const std::vector<int>& order);

}  // namespace facetint
