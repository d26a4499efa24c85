#include "harmonia/harmonic.hpp"

#include <cmath>
#include <stdexcept>

#include "harmonia/root_find.hpp"

namespace harmonia {

double harmonic_residual(const MoebiusStructure& m, const PointPair& a,
                         const PointPair& b) {
  if (a.shares_point(b)) throw std::invalid_argument("degenerate configuration");
  const double lhs = std::log(m.dist(a.lo(), b.lo())) + std::log(m.dist(a.hi(), b.hi()));
  const double rhs = std::log(m.dist(a.lo(), b.hi())) + std::log(m.dist(a.hi(), b.lo()));
  return std::fabs(lhs - rhs);
}

namespace detail {

Arc conjugate_arc(const PointPair& a, CirclePoint z) {
  // The arc of the complement of a that does not contain z.
  Arc fwd = a.arc(0);
  return fwd.contains(z) ? a.arc(1) : fwd;
}

}  // namespace detail

namespace {

// Shared solver body: root of f(u) = d(x,z) d(y,u) - d(x,u) d(y,z) on the arc,
// where x = a.lo, y = a.hi. The product form has the same sign as the
// log-residual and avoids logs in the hot loop.
CirclePoint conjugate_impl(const MoebiusStructure& m, const PointPair& a,
                           CirclePoint z, double lo_off, double hi_off) {
  const Arc arc = detail::conjugate_arc(a, z);
  const CirclePoint x = a.lo(), y = a.hi();
  const double dxz = m.dist(x, z), dyz = m.dist(y, z);
  auto f = [&](double t) {
    const CirclePoint u = advance(arc.from, t);
    return dxz * m.dist(y, u) - m.dist(x, u) * dyz;
  };
  detail::RootOpts opts{m.tol().angle_floor, m.tol().solver_max_iter};
  double root_off;
  if (lo_off < 0.0) {
    // Full arc. Near the arc start f carries the sign fixed by which axis
    // point the arc starts at: d(x,u) -> 0 there if arc.from == x.
    const int sign_lo = (arc.from == x) ? 1 : -1;
    root_off = detail::solve_signed_ends(f, arc.length(), sign_lo, opts);
  } else {
    root_off = detail::solve_probed_ends(f, lo_off, hi_off, opts);
  }
  return advance(arc.from, root_off);
}

}  // namespace

CirclePoint conjugate(const MoebiusStructure& m, const PointPair& a, CirclePoint z) {
  if (a.contains(z)) throw std::invalid_argument("conjugate of an axis point");
  return conjugate_impl(m, a, z, -1.0, -1.0);
}

namespace detail {

CirclePoint conjugate_on_bracket(const MoebiusStructure& m, const PointPair& a,
                                 CirclePoint z, double lo_off, double hi_off) {
  if (a.contains(z)) throw std::invalid_argument("conjugate of an axis point");
  return conjugate_impl(m, a, z, lo_off, hi_off);
}

}  // namespace detail

CirclePoint reflection(const MoebiusStructure& m, const PointPair& b, CirclePoint x) {
  if (b.contains(x)) return x;
  return conjugate(m, b, x);
}

Tuple4 embed_e(const MoebiusStructure& m, int i, const std::array<CirclePoint, 3>& t) {
  if (i < 1 || i > 3) throw std::invalid_argument("embedding index must be 1..3");
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q)
      if (t[p] == t[q]) throw std::invalid_argument("degenerate triple");
  const CirclePoint xi = t[i - 1];
  const CirclePoint xn = t[i % 3];        // x_{i+1}
  const CirclePoint xnn = t[(i + 1) % 3]; // x_{i+2}
  const CirclePoint yi = conjugate(m, PointPair(xn, xnn), xi);
  return {yi, t[0], t[1], t[2]};
}

HarmonicPair::HarmonicPair(const MoebiusStructure& m, PointPair left, PointPair right)
    : left_(left), right_(right) {
  if (!pairs_separate(left, right))
    throw std::invalid_argument("axes do not separate each other");
  residual_ = harmonic_residual(m, left, right);
  if (residual_ > m.tol().eps_harm)
    throw std::invalid_argument("pair is not harmonic within tolerance");
}

namespace {
bool pair_less(const PointPair& a, const PointPair& b) {
  if (a.lo().angle() != b.lo().angle()) return a.lo().angle() < b.lo().angle();
  return a.hi().angle() < b.hi().angle();
}
}  // namespace

HmPoint::HmPoint(const HarmonicPair& q) : HmPoint(q.left_axis(), q.right_axis()) {}

HmPoint::HmPoint(PointPair a, PointPair b)
    : first_(pair_less(a, b) ? a : b), second_(pair_less(a, b) ? b : a) {}

bool HmPoint::approx_eq(const HmPoint& o, double eps_angle) const {
  return (first_.approx_eq(o.first_, eps_angle) &&
          second_.approx_eq(o.second_, eps_angle)) ||
         (first_.approx_eq(o.second_, eps_angle) &&
          second_.approx_eq(o.first_, eps_angle));
}

bool HmPoint::has_axis(const PointPair& axis, double eps_angle) const {
  return first_.approx_eq(axis, eps_angle) || second_.approx_eq(axis, eps_angle);
}

const PointPair& HmPoint::other_axis(const PointPair& axis, double eps_angle) const {
  if (first_.approx_eq(axis, eps_angle)) return second_;
  if (second_.approx_eq(axis, eps_angle)) return first_;
  throw std::invalid_argument("axis does not belong to this point");
}

}  // namespace harmonia
