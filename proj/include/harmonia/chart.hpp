// The inversion chart at the pole (angle pi), scaled so that the chart
// distance |s - t| equals the inverted canonical metric d_pole, with
// chart(angle 0) = 0. Angles stay the canonical representation everywhere;
// chart coordinates are a derived view used by tests and examples.
#pragma once

#include <cmath>
#include <limits>

#include "harmonia/circle.hpp"

namespace harmonia {

inline CirclePoint chart_pole() { return CirclePoint(0.5 * kTau); }

inline CirclePoint point_from_chart(double s) {
  if (std::isinf(s)) return chart_pole();
  return CirclePoint(2.0 * std::atan(2.0 * s));
}

// +/-inf at the pole.
inline double chart_coord(CirclePoint p) {
  if (p == chart_pole()) return std::numeric_limits<double>::infinity();
  return 0.5 * std::tan(0.5 * p.angle());
}

inline PointPair pair_from_chart(double s, double t) {
  return PointPair(point_from_chart(s), point_from_chart(t));
}

}  // namespace harmonia
