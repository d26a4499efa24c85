// Lines in Hm, the log-ratio coordinate along them, point-to-line projection,
// segments, and the common perpendicular of strongly causal pairs.
#pragma once

#include <array>

#include "harmonia/harmonic.hpp"

namespace harmonia {

// A line h_a with a designated positive arc carrying the parametrizing point.
struct Line {
  PointPair axis;
  Arc positive;

  Line(PointPair a, CirclePoint witness);
  // Positive arc defaults to the one containing the smaller-angle midpoint.
  static Line default_oriented(PointPair a);
};

// The harmonic pair (a, (x, rho_a(x))) on h_a. Errors when x is a point of a.
HarmonicPair project_point(const MoebiusStructure& m, CirclePoint x,
                           const PointPair& a);

// t(q) = ln(d(x,z)/d(y,z)) with (x,y) = axis in stored order and z the
// parametrizing point of q on the positive arc. Errors if q is not on line.
double line_coord(const MoebiusStructure& m, const Line& line,
                  const HarmonicPair& q);

// Distance along a line between two harmonic pairs sharing `axis`, given by
// their other axes b, b2. Representative-independent.
double line_distance_on_axis(const MoebiusStructure& m, const PointPair& axis,
                             const PointPair& b, const PointPair& b2);

// Shared-axis detection on ordered pairs; errors with "not collinear".
double line_distance(const MoebiusStructure& m, const HarmonicPair& q,
                     const HarmonicPair& q2);

// The four equivalent log expressions of the distance (one point from each of
// b, b2); they agree within eps_cr by harmonicity.
std::array<double, 4> line_distance_forms(const MoebiusStructure& m,
                                          const PointPair& axis,
                                          const PointPair& b, const PointPair& b2);

// The unique axis harmonic with both b and b2; requires strong causality and
// four distinct points.
PointPair common_perpendicular(const MoebiusStructure& m, const PointPair& b,
                               const PointPair& b2);

struct Segment {
  Line line;
  HarmonicPair q, q2;

  Segment(const MoebiusStructure& m, Line line, HarmonicPair q, HarmonicPair q2);
  double length(const MoebiusStructure& m) const;
  // Interior membership: the other axis of p separates those of the ends.
  bool contains_interior(const MoebiusStructure& m, const HarmonicPair& p) const;
};

namespace detail {
// The closed arc determined by b that does not contain b2 (solving arc of the
// perpendicular fixed point).
Arc perpendicular_arc(const PointPair& b, const PointPair& b2);
// Perpendicular solve restricted to offsets of perpendicular_arc; bracket must
// contain the fixed point. Test hook for uniqueness restarts.
PointPair perpendicular_on_bracket(const MoebiusStructure& m, const PointPair& b,
                                   const PointPair& b2, double lo_off,
                                   double hi_off);
// Coordinate of the projection of point v onto h_axis, computed directly from
// the representative v (both representatives of an axis give equal values).
double projected_coord(const MoebiusStructure& m, const PointPair& axis,
                       CirclePoint v);
}  // namespace detail

}  // namespace harmonia
