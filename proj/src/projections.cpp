#include "harmonia/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "harmonia/root_find.hpp"

namespace harmonia {

namespace {

bool same_pair(const PointPair& a, const PointPair& b, double eps) {
  return a.approx_eq(b, eps);
}

// (a, c) harmonic in the testable sense: distinct separating pairs whose
// residual clears the tolerance.
bool harmonic_pairing(const MoebiusStructure& m, const PointPair& a,
                      const PointPair& c) {
  if (a.shares_point(c)) return false;
  if (!pairs_separate(a, c)) return false;
  return harmonic_residual(m, a, c) <= m.tol().eps_harm;
}

// Offset of the projection parameter of `pt` on the reference arc of c; when
// pt is an endpoint of c the projection escapes to the respective arc end.
double param_offset(const MoebiusStructure& m, const PointPair& c, const Arc& ref,
                    CirclePoint pt) {
  if (pt == c.lo()) return 0.0;
  if (pt == c.hi()) return ref.length();
  const CirclePoint rep = ref.contains(pt) ? pt : reflection(m, c, pt);
  return ccw_gap(ref.from, rep);
}

}  // namespace

namespace detail {

AdmissibleBracket admissible_bracket(const MoebiusStructure& m, const PointPair& a,
                                     const PointPair& c) {
  const Arc ref = c.arc(0);
  const double oz = param_offset(m, c, ref, a.lo());
  const double ou = param_offset(m, c, ref, a.hi());
  return {ref, std::min(oz, ou), std::max(oz, ou)};
}

}  // namespace detail

ProjectionResult s_projection(const MoebiusStructure& m, const HarmonicPair& q,
                              const PointPair& c, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("ratio s must be positive");
  const double eps = m.tol().eps_angle;
  const PointPair& a = q.left_axis();
  const PointPair& b = q.right_axis();

  if (same_pair(c, a, eps))
    return {HarmonicPair(m, c, b), s, 0, 0.0};
  if (harmonic_pairing(m, a, c))
    return {HarmonicPair(m, c, a), s, 0, 0.0};

  const auto br = detail::admissible_bracket(m, a, c);
  if (!(br.hi - br.lo > 0.0))
    throw std::runtime_error("empty admissible segment");

  const double tb = detail::projected_coord(m, a, b.lo());
  long long evals = 0;
  auto g = [&](double off) {
    ++evals;
    const CirclePoint v = advance(br.ref.from, off);
    const CirclePoint w = reflection(m, c, v);
    const double tv = detail::projected_coord(m, a, v);
    const double tw = detail::projected_coord(m, a, w);
    return tb - (tv + s * tw) / (1.0 + s);
  };
  detail::RootOpts opts{m.tol().angle_floor, m.tol().solver_max_iter};
  const double root = detail::solve_probed_ends(g, br.lo, br.hi, opts);
  const CirclePoint v = advance(br.ref.from, root);
  const CirclePoint w = reflection(m, c, v);
  const double res = std::fabs(g(root));
  return {HarmonicPair(m, c, PointPair(v, w)), s, evals, res};
}

ProjectionResult equal_ratio_projection(const MoebiusStructure& m,
                                        const HarmonicPair& q, const PointPair& c) {
  const PointPair& a = q.left_axis();
  const PointPair& b = q.right_axis();

  if (harmonic_pairing(m, a, c) || same_pair(c, b, m.tol().eps_angle))
    return {HarmonicPair(m, c, a), std::nullopt, 0, 0.0};
  if (harmonic_pairing(m, c, b) || same_pair(c, a, m.tol().eps_angle))
    return {HarmonicPair(m, c, b), std::nullopt, 0, 0.0};

  const auto bra = detail::admissible_bracket(m, a, c);
  const auto brb = detail::admissible_bracket(m, b, c);
  const double lo = std::max(bra.lo, brb.lo);
  const double hi = std::min(bra.hi, brb.hi);
  if (!(hi - lo > 0.0))
    throw std::runtime_error("empty intersection segment");

  const double tb_on_a = detail::projected_coord(m, a, b.lo());
  const double ta_on_b = detail::projected_coord(m, b, a.lo());
  long long evals = 0;
  double last_s = 0.0;
  auto g = [&](double off) {
    ++evals;
    const CirclePoint v = advance(bra.ref.from, off);
    const CirclePoint w = reflection(m, c, v);
    const double s_num = std::fabs(detail::projected_coord(m, b, v) - ta_on_b);
    const double s_den = std::fabs(ta_on_b - detail::projected_coord(m, b, w));
    const double t_num = std::fabs(detail::projected_coord(m, a, v) - tb_on_a);
    const double t_den = std::fabs(tb_on_a - detail::projected_coord(m, a, w));
    last_s = s_num / s_den;
    return std::log(s_num) - std::log(s_den) - std::log(t_num) + std::log(t_den);
  };
  detail::RootOpts opts{m.tol().angle_floor, m.tol().solver_max_iter};
  const double root = detail::solve_probed_ends(g, lo, hi, opts);
  const CirclePoint v = advance(bra.ref.from, root);
  const CirclePoint w = reflection(m, c, v);
  const double res = std::fabs(g(root));
  return {HarmonicPair(m, c, PointPair(v, w)), last_s, evals, res};
}

MonotoneReport monotone_family_check(const MoebiusStructure& m, const PointPair& a,
                                     const PointPair& c, int samples,
                                     std::uint64_t seed) {
  if (same_pair(a, c, m.tol().eps_angle)) return {true, true, 0.0, 0};
  if (harmonic_pairing(m, a, c)) return {true, true, 0.0, 0};
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");

  const auto br = detail::admissible_bracket(m, a, c);
  const double span = br.hi - br.lo;
  if (!(span > 0.0)) return {true, true, 0.0, 0};

  SampleRng rng(seed);
  std::vector<double> offs(static_cast<size_t>(samples));
  for (auto& o : offs)
    o = br.lo + span * (1e-6 + (1.0 - 2e-6) * rng.uniform01());
  std::sort(offs.begin(), offs.end());

  MonotoneReport rep;
  double prev_tv = 0.0, prev_tw = 0.0;
  bool have_prev = false;
  for (double off : offs) {
    const CirclePoint v = advance(br.ref.from, off);
    const CirclePoint w = reflection(m, c, v);
    const double tv = detail::projected_coord(m, a, v);
    const double tw = detail::projected_coord(m, a, w);
    if (have_prev) {
      const double dv = tv - prev_tv, dw = tw - prev_tw;
      const double mag = std::min(std::fabs(dv), std::fabs(dw));
      const double slack = (dv > 0) == (dw > 0) ? mag : -mag;
      if (rep.pairs_checked == 0 || slack < rep.min_slack) rep.min_slack = slack;
      ++rep.pairs_checked;
    }
    prev_tv = tv;
    prev_tw = tw;
    have_prev = true;
  }
  rep.monotone = rep.min_slack >= 0.0;
  return rep;
}

}  // namespace harmonia
