// Harmonic pairs: the residual of |xz||yu| = |xu||yz|, the conjugate solver,
// reflections, the three embeddings of nondegenerate triples, and the
// Harm / Hm data model.
#pragma once

#include <array>

#include "harmonia/cross_ratio.hpp"
#include "harmonia/semimetric.hpp"

namespace harmonia {

// |ln(d(x,z)d(y,u)) - ln(d(x,u)d(y,z))| for a = (x,y), b = (z,u); independent
// of the representative ordering inside each pair. Errors on shared points.
double harmonic_residual(const MoebiusStructure& m, const PointPair& a,
                         const PointPair& b);

// The unique point u on the arc of the complement of a not containing z such
// that (a, (z,u)) is harmonic. Errors if z is a point of a.
CirclePoint conjugate(const MoebiusStructure& m, const PointPair& a, CirclePoint z);

// rho_b: the involution pairing x with its harmonic partner across b. Fixed
// points of b map to themselves (continuous extension).
CirclePoint reflection(const MoebiusStructure& m, const PointPair& b, CirclePoint x);

// e_i(t) = (y_i, x1, x2, x3): y_i is the chart midpoint of x_{i+1}, x_{i+2}
// with infinitely remote point x_i; the output is harmonic of type i (1..3).
Tuple4 embed_e(const MoebiusStructure& m, int i, const std::array<CirclePoint, 3>& t);

// Ordered harmonic pair (left axis, right axis); construction validates
// separation and the residual, so instances are harmonic by invariant.
class HarmonicPair {
 public:
  HarmonicPair(const MoebiusStructure& m, PointPair left, PointPair right);

  const PointPair& left_axis() const { return left_; }
  const PointPair& right_axis() const { return right_; }
  double residual() const { return residual_; }

  struct unchecked_t {};
  HarmonicPair(unchecked_t, PointPair left, PointPair right, double residual)
      : left_(left), right_(right), residual_(residual) {}

 private:
  PointPair left_, right_;
  double residual_ = 0.0;
};

inline HarmonicPair involution_j(const HarmonicPair& q) {
  return HarmonicPair(HarmonicPair::unchecked_t{}, q.right_axis(), q.left_axis(),
                      q.residual());
}

// Unordered quotient of a harmonic pair under the axis swap.
class HmPoint {
 public:
  explicit HmPoint(const HarmonicPair& q);
  HmPoint(PointPair a, PointPair b);  // canonicalizes the order

  const PointPair& first() const { return first_; }
  const PointPair& second() const { return second_; }
  bool operator==(const HmPoint& o) const {
    return first_ == o.first_ && second_ == o.second_;
  }
  bool approx_eq(const HmPoint& o, double eps_angle) const;
  bool has_axis(const PointPair& axis, double eps_angle) const;
  // The axis other than `axis`; errors when axis is not one of the two.
  const PointPair& other_axis(const PointPair& axis, double eps_angle) const;

 private:
  PointPair first_, second_;
};

namespace detail {
// The arc on which the conjugate of z with respect to a lives (the component
// of the complement of a not containing z).
Arc conjugate_arc(const PointPair& a, CirclePoint z);
// Conjugate restricted to offsets [lo_off, hi_off] of conjugate_arc; the
// bracket must contain the solution. Test hook for uniqueness checks.
CirclePoint conjugate_on_bracket(const MoebiusStructure& m, const PointPair& a,
                                 CirclePoint z, double lo_off, double hi_off);
}  // namespace detail

}  // namespace harmonia
