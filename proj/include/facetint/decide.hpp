#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "facetint/flow3.hpp"
#include "facetint/multigraph.hpp"

namespace facetint {

enum class Verdict { YES, NO, UNKNOWN };

const char* verdict_name(Verdict v);

// Certificates are self-contained claims about the input graph; each kind can
// be re-checked from scratch by certificate_verify without trusting the
// decision procedure that produced it.

// a modulo-3-orientation of the graph itself; proves YES
struct Mod3Certificate {
  Orientation orientation;
};

// no edge cut of size <= checked_ceiling exists; with checked_ceiling = 3
// this proves YES. Re-checked by exhaustive cut search.
struct FourEdgeConnectedCertificate {
  int checked_ceiling = 3;
};

// cubic-graph parity evidence. For YES: sides is a bipartition (0/1 per
// vertex in vertices() order). For NO: odd_cycle is a closed walk of odd
// length. Either way the graph must be cubic.
struct CubicBipartiteCertificate {
  std::optional<std::vector<int>> sides;
  std::vector<int> odd_cycle;
};

// max degree <= 3 and the flow solver refutes a modulo-3-orientation;
// proves NO. Re-checked by re-running the solver.
struct SubcubicRefutationCertificate {};

// no K_{3,3} minor. With an orientation attached it proves YES; without one
// it claims the solver refutes a flow, proving NO.
struct K33MinorFreeCertificate {
  std::optional<Orientation> orientation;
};

// isomorphism onto the canonical K_{3,n}^+ with n >= 4; proves YES.
// iso maps graph vertex -> canonical vertex (0,1,2 the 3-side; 3..n+2 the
// n-side; the extra edge joins 0 and 1).
struct K3nPlusCertificate {
  int n = 0;
  std::vector<std::pair<int, int>> iso;
};

// a bridge together with the two sides it separates; proves NO. side_x and
// side_y partition the vertices and edge is the only edge between them.
struct BridgeCertificate {
  int edge = -1;
  std::vector<int> side_x, side_y;
};

// a vertex of degree 1; proves NO
struct LeafCertificate {
  int vertex = -1;
};

// witness partition whose quotient is exactly a planar graph with no
// modulo-3-orientation (odd wheels by default); proves NO.
// class_of[i] = pattern vertex assigned to vertices()[i].
struct SubcontractionCertificate {
  Multigraph pattern;
  std::vector<int> class_of;
};

using Certificate =
    std::variant<Mod3Certificate, FourEdgeConnectedCertificate, CubicBipartiteCertificate,
                 SubcubicRefutationCertificate, K33MinorFreeCertificate, K3nPlusCertificate,
                 BridgeCertificate, LeafCertificate, SubcontractionCertificate>;

struct Decision {
  Verdict verdict = Verdict::UNKNOWN;
  std::string rule;  // which rule fired; empty for UNKNOWN
  std::optional<Certificate> certificate;
  std::vector<std::string> attempted;  // rules evaluated, in order
};

struct DecideOptions {
  // extra forbidden quotient patterns; each must be planar and refuted by
  // the flow solver (checked, invalid_input otherwise)
  std::vector<Multigraph> extra_patterns;
  int subcontraction_guard = 16;
  int minor_guard = 20;
};

// Decision ladder, first hit wins:
//   degree-1 vertex            -> NO   (that pendant edge borders one face twice)
//   bridge                     -> NO   (some drawing makes the outer face touch itself)
//   modulo-3-orientation found -> YES  (lift + potential construction colors any drawing)
//   edge connectivity >= 4     -> YES  (planarizations stay 4-edge-connected)
//   max degree <= 3            -> NO   (colorability equals flowability below degree 4)
//   no K_{3,3} minor           -> NO   (same equivalence for this class)
//   isomorphic to K_{3,n}^+    -> YES  (explicit colorable family, n >= 4)
//   odd-wheel quotient         -> NO   (colorability is closed under identifications)
//   otherwise                  -> UNKNOWN
// Rules blocked by a size guard are recorded in attempted and skipped.
Decision decide_facially_3_colorable(const Multigraph& g, const DecideOptions& opt = {});

// re-checks verdict + certificate from scratch; false on any failure or
// mismatch (a certificate kind that cannot prove the claimed verdict is
// simply false, never an error)
bool certificate_verify(const Multigraph& g, const Decision& d);

// exploration report around the gap between face colorability and flows
struct ConjectureReport {
  Verdict colorable = Verdict::UNKNOWN;  // decide's verdict
  std::string rule;
  bool flowable = false;
  // no partition quotient isomorphic to K_{3,n}^+ for any 4 <= n <= |V|-3
  bool k3nplus_free = true;
  std::optional<int> k3nplus_n;  // witness n when not free
  // colorable, not flowable, and quotient-free: exactly the kind of graph
  // the equivalence conjecture forbids
  bool candidate_counterexample = false;
  // necessary properties of a smallest such graph; evaluated when the graph
  // has no flow, and listed in failed_filters when absent
  bool vertex_3_critical = false;
  bool simple = false;
  bool star_3_cuts_only = false;  // 3-edge-connected, 3-cuts all vertex stars
  bool max_degree_at_least_4 = false;
  bool has_k33_minor = false;
  std::vector<std::string> failed_filters;
};

ConjectureReport conjecture_gate(const Multigraph& g, int guard_vertices = 12);

}  // namespace facetint
