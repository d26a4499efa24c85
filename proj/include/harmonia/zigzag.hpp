// Zig-zag paths in Hm: validation, the five-side connector through common
// perpendiculars, upper bounds on the zig-zag distance via derivative-free
// search, closed-path slack checks, and the geodesic verifier.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmonia/lines.hpp"

namespace harmonia {

// Alternating chain of line segments; side i carries vertices i-1, i and both
// contain its axis. Lengths are cached at construction.
struct ZZPath {
  std::vector<HmPoint> vertices;     // size n+1 (size 1 for the empty path)
  std::vector<PointPair> side_axes;  // size n
  std::vector<double> side_lengths;  // size n

  double length() const;
  int sides() const { return static_cast<int>(side_axes.size()); }
  bool is_closed(double eps_angle) const;
  nlohmann::ordered_json to_json() const;
};

struct PathDiagnostics {
  bool valid = true;
  std::string message;
  int violation_index = -1;  // vertex or side index of the first violation
};

PathDiagnostics validate(const MoebiusStructure& m, const ZZPath& path);

ZZPath make_empty_path(const HarmonicPair& q);

// One-side path between collinear pairs (shared axis detected on either slot).
ZZPath make_segment_path(const MoebiusStructure& m, const HarmonicPair& q,
                         const HarmonicPair& q2);

// Prunes zero-length sides and merges consecutive sides with equal axes; for
// closed paths the merge also wraps around.
ZZPath canonicalize(const MoebiusStructure& m, ZZPath path);

// The at-most-five-side path q ~ q2 through the common perpendiculars of
// (left axis of q, a2) and (left axis of q2, a2). Preconditions of the
// perpendiculars propagate.
ZZPath connect_five(const MoebiusStructure& m, const HarmonicPair& q,
                    const HarmonicPair& q2, const PointPair& a2);

// Joins two paths sharing an endpoint vertex; result is canonicalized.
ZZPath concatenate(const MoebiusStructure& m, const ZZPath& s1, const ZZPath& s2);

struct DeltaEstimate {
  double upper = 0.0;
  ZZPath witness;
  long long budget_consumed = 0;
  std::uint64_t seed = 0;
  // (evaluations, best length) recorded at every improvement
  std::vector<std::pair<long long, double>> trace;
};

// Upper bound on the zig-zag distance: minimizes over the two-parameter
// five-side family per complementary arc (simplex descent with restarts),
// random-walk-and-connect paths, optional extra candidates, and - when the
// pairs share an axis - the direct segment.
DeltaEstimate delta_upper(const MoebiusStructure& m, const HarmonicPair& q,
                          const HarmonicPair& q2, long long budget,
                          std::uint64_t seed,
                          std::span<const ZZPath> extra_candidates = {});

struct GeodesicReport {
  double segment_length = 0.0;  // |qq'| along the line
  double min_found = 0.0;       // shortest path found, direct segment excluded
  double margin = 0.0;          // min_found - segment_length
  long long paths_tried = 0;
  ZZPath best;
  std::vector<std::pair<long long, double>> trace;
};

GeodesicReport verify_geodesic(const MoebiusStructure& m, const Line& line,
                               const HarmonicPair& q, const HarmonicPair& q2,
                               long long budget, std::uint64_t seed);

struct ClosedPathReport {
  double min_slack = 0.0;  // min over sides of (sum of others - side)
  int worst_side = -1;
  std::vector<double> side_slacks;
};

// For every side, the sum of the other sides must exceed it. Errors on
// non-closed or invalid input.
ClosedPathReport closed_path_check(const MoebiusStructure& m, const ZZPath& path);

// Closed path: connect_five(q, q2, a2) plus the closing segment, merged.
ZZPath make_closed_path(const MoebiusStructure& m, const HarmonicPair& q,
                        const HarmonicPair& q2, const PointPair& a2);

}  // namespace harmonia
