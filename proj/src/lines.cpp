#include "harmonia/lines.hpp"

#include <cmath>
#include <stdexcept>

#include "harmonia/root_find.hpp"

namespace harmonia {

Line::Line(PointPair a, CirclePoint witness) : axis(a), positive(a.arc(0)) {
  if (a.contains(witness))
    throw std::invalid_argument("orientation witness on the axis");
  if (!positive.contains(witness)) positive = a.arc(1);
}

Line Line::default_oriented(PointPair a) {
  Arc fwd = a.arc(0), bwd = a.arc(1);
  return Line(a, fwd.midpoint().angle() < bwd.midpoint().angle() ? fwd.midpoint()
                                                                 : bwd.midpoint());
}

HarmonicPair project_point(const MoebiusStructure& m, CirclePoint x,
                           const PointPair& a) {
  if (a.contains(x)) throw std::invalid_argument("projecting a point of the axis");
  const CirclePoint y = conjugate(m, a, x);
  return HarmonicPair(m, a, PointPair(x, y));
}

namespace detail {

double projected_coord(const MoebiusStructure& m, const PointPair& axis,
                       CirclePoint v) {
  return std::log(m.dist(axis.lo(), v)) - std::log(m.dist(axis.hi(), v));
}

}  // namespace detail

double line_coord(const MoebiusStructure& m, const Line& line,
                  const HarmonicPair& q) {
  if (!q.left_axis().approx_eq(line.axis, m.tol().eps_angle))
    throw std::invalid_argument("pair is not on the line");
  const PointPair& b = q.right_axis();
  const CirclePoint z = line.positive.contains(b.lo()) ? b.lo() : b.hi();
  return detail::projected_coord(m, line.axis, z);
}

double line_distance_on_axis(const MoebiusStructure& m, const PointPair& axis,
                             const PointPair& b, const PointPair& b2) {
  if (b == b2) return 0.0;
  const Arc ref = axis.arc(0);
  const CirclePoint z = ref.contains(b.lo()) ? b.lo() : b.hi();
  const CirclePoint z2 = ref.contains(b2.lo()) ? b2.lo() : b2.hi();
  return std::fabs(detail::projected_coord(m, axis, z) -
                   detail::projected_coord(m, axis, z2));
}

double line_distance(const MoebiusStructure& m, const HarmonicPair& q,
                     const HarmonicPair& q2) {
  const double eps = m.tol().eps_angle;
  const HmPoint h1(q), h2(q2);
  if (h1.approx_eq(h2, eps)) return 0.0;
  for (const PointPair& axis : {q.left_axis(), q.right_axis()}) {
    if (h2.has_axis(axis, eps)) {
      const HmPoint h1c(q);
      return line_distance_on_axis(m, axis, h1c.other_axis(axis, eps),
                                   h2.other_axis(axis, eps));
    }
  }
  throw std::invalid_argument("not collinear");
}

std::array<double, 4> line_distance_forms(const MoebiusStructure& m,
                                          const PointPair& axis,
                                          const PointPair& b, const PointPair& b2) {
  const CirclePoint x = axis.lo(), y = axis.hi();
  auto form = [&](CirclePoint z, CirclePoint z2) {
    return std::fabs(std::log(m.dist(x, z2)) + std::log(m.dist(y, z)) -
                     std::log(m.dist(x, z)) - std::log(m.dist(y, z2)));
  };
  return {form(b.lo(), b2.lo()), form(b.lo(), b2.hi()), form(b.hi(), b2.lo()),
          form(b.hi(), b2.hi())};
}

namespace detail {

Arc perpendicular_arc(const PointPair& b, const PointPair& b2) {
  Arc fwd = b.arc(0);
  // strong causality puts both points of b2 in one component
  return fwd.contains(b2.lo()) ? b.arc(1) : fwd;
}

namespace {

PointPair perpendicular_impl(const MoebiusStructure& m, const PointPair& b,
                             const PointPair& b2, double lo_off, double hi_off) {
  const Arc arc = perpendicular_arc(b, b2);
  const double span = arc.length();
  // Displacement of the composed reflection rho_b . rho_b2 in arc offset;
  // positive near the arc start, negative near the end, vanishing exactly at
  // the fixed point.
  auto g = [&](double t) {
    const CirclePoint x = advance(arc.from, t);
    const CirclePoint r = conjugate(m, b, conjugate(m, b2, x));
    return ccw_gap(arc.from, r) - t;
  };
  RootOpts opts{m.tol().angle_floor, m.tol().solver_max_iter};
  double root;
  if (lo_off < 0.0) {
    root = solve_signed_ends(g, span, +1, opts);
  } else {
    root = solve_probed_ends(g, lo_off, hi_off, opts);
  }
  const CirclePoint x = advance(arc.from, root);
  const CirclePoint y = conjugate(m, b2, x);
  return PointPair(x, y);
}

}  // namespace

PointPair perpendicular_on_bracket(const MoebiusStructure& m, const PointPair& b,
                                   const PointPair& b2, double lo_off,
                                   double hi_off) {
  return perpendicular_impl(m, b, b2, lo_off, hi_off);
}

}  // namespace detail

PointPair common_perpendicular(const MoebiusStructure& m, const PointPair& b,
                               const PointPair& b2) {
  if (b.shares_point(b2) || !strong_causal(b, b2))
    throw std::invalid_argument(
        "no common perpendicular (separating or linked axes)");
  return detail::perpendicular_impl(m, b, b2, -1.0, -1.0);
}

Segment::Segment(const MoebiusStructure& m, Line line_, HarmonicPair q_,
                 HarmonicPair q2_)
    : line(line_), q(q_), q2(q2_) {
  const double eps = m.tol().eps_angle;
  if (!q.left_axis().approx_eq(line.axis, eps) ||
      !q2.left_axis().approx_eq(line.axis, eps))
    throw std::invalid_argument("segment ends not on the line");
}

double Segment::length(const MoebiusStructure& m) const {
  return line_distance_on_axis(m, line.axis, q.right_axis(), q2.right_axis());
}

bool Segment::contains_interior(const MoebiusStructure& m,
                                const HarmonicPair& p) const {
  if (!p.left_axis().approx_eq(line.axis, m.tol().eps_angle)) return false;
  return pair_separates_pairs(p.right_axis(), q.right_axis(), q2.right_axis());
}

}  // namespace harmonia
