#pragma once

#include <string>

#include "facetint/drawing.hpp"
#include "facetint/facecolor.hpp"
#include "facetint/flow3.hpp"

namespace facetint {

// Text formats. Parsers accept records in any order, '#' comments, and blank
// lines; serializers emit the canonical form (records sorted by id, one per
// line), so serialize(parse(s)) == s for canonical s.

// graph: "v <id>" and "e <id> <u> <v>"
Multigraph parse_graph(const std::string& text);
std::string serialize_graph(const Multigraph& g);

// orientation: "a <edge-id> <tail> <head>" per edge. Flow files add
// "f <edge-id> <1|2>"; parse_orientation tolerates and ignores those.
Orientation parse_orientation(const std::string& text, const Multigraph& g);
std::string serialize_orientation(const Orientation& o);
Z3Flow parse_flow(const std::string& text, const Multigraph& g);
std::string serialize_flow(const Z3Flow& f);

// polyline drawing: "v <id> <x> <y>" and "e <id> <u> <v> : <x1,y1> <x2,y2> ...",
// coordinates rational, written p or p/q
PolylineDrawing parse_poly(const std::string& text);
std::string serialize_poly(const PolylineDrawing& p);

// combinatorial map: "pv <id> normal <orig>" / "pv <id> crossing",
// "seg <id> <pu> <pv>", "rot <pv> <darts clockwise...>",
// "trail <edge-id> <tokens...>", "outer <face index>". A trail token is a
// signed 1-based segment number (sign = traversal direction), keeping
// reversal of segment 0 representable. The underlying abstract graph is
// rebuilt from the pv and trail records; the parsed map is validated in full.
PlanarizedDrawing parse_cmap(const std::string& text);
std::string serialize_cmap(const PlanarizedDrawing& d);

// face coloring: "k <k>" then "f <face-id> <color>" in face order
FaceColoring parse_fc(const std::string& text);
std::string serialize_fc(const FaceColoring& c);

}  // namespace facetint
