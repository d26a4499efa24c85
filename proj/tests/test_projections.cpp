#include <doctest.h>

#include <cmath>

#include "harmonia/chart.hpp"
#include "harmonia/projections.hpp"
#include "harmonia/rng.hpp"

using namespace harmonia;

namespace {
const MoebiusStructure& canonical() {
  static const MoebiusStructure m(SemiMetricSpec::canonical());
  return m;
}

PointPair random_axis(SampleRng& rng, double gap = 1e-2) {
  while (true) {
    CirclePoint p = rng.angle(), q = rng.angle();
    if (!p.approx_eq(q, gap)) return PointPair(p, q);
  }
}

// Random pair on h_a avoiding ill-conditioned corners.
HarmonicPair random_on_line(const MoebiusStructure& m, SampleRng& rng,
                            const PointPair& a) {
  const Arc arc = a.arc(0);
  while (true) {
    const CirclePoint z = rng.angle_in(arc);
    if (z.approx_eq(a.lo(), 1e-4) || z.approx_eq(a.hi(), 1e-4)) continue;
    return project_point(m, z, a);
  }
}

PointPair random_target(SampleRng& rng, const PointPair& a) {
  while (true) {
    const PointPair c = random_axis(rng);
    if (c.lo().approx_eq(a.lo(), 1e-3) || c.lo().approx_eq(a.hi(), 1e-3) ||
        c.hi().approx_eq(a.lo(), 1e-3) || c.hi().approx_eq(a.hi(), 1e-3))
      continue;
    return c;
  }
}
}  // namespace

TEST_CASE("midpoint projection of the worked chart example") {
  const auto& m = canonical();
  const HarmonicPair q(m, pair_from_chart(1, 3),
                       PointPair(point_from_chart(2), chart_pole()));
  const PointPair c(point_from_chart(0), chart_pole());
  const ProjectionResult r = midpoint_projection(m, q, c);
  const double c0 = chart_coord(r.p.right_axis().lo());
  const double c1 = chart_coord(r.p.right_axis().hi());
  CHECK(std::min(c0, c1) == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-9));
  CHECK(std::max(c0, c1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(r.p.residual() <= m.tol().eps_harm);
  CHECK(r.s.has_value());
}

TEST_CASE("projection onto the pair's own line returns the pair") {
  const auto& m = canonical();
  SampleRng rng(3);
  const PointPair a = random_axis(rng);
  const HarmonicPair q = random_on_line(m, rng, a);
  const ProjectionResult r = s_projection(m, q, a, 1.0);
  CHECK(HmPoint(r.p) == HmPoint(q));
  CHECK(r.evaluations == 0);
}

TEST_CASE("projection onto a line harmonic to the axis degenerates") {
  const auto& m = canonical();
  const PointPair a = pair_from_chart(-1, 1);
  const PointPair c(point_from_chart(0), chart_pole());
  const HarmonicPair q(m, a, PointPair(point_from_chart(0.5),
                                       point_from_chart(-2.0)));
  REQUIRE(harmonic_residual(m, a, c) <= m.tol().eps_harm);
  const ProjectionResult r = s_projection(m, q, c, 2.0);
  CHECK(r.p.left_axis() == c);
  CHECK(r.p.right_axis() == a);
}

TEST_CASE("s <= 0 is rejected") {
  const auto& m = canonical();
  SampleRng rng(5);
  const PointPair a = random_axis(rng);
  const HarmonicPair q = random_on_line(m, rng, a);
  CHECK_THROWS_AS(s_projection(m, q, random_target(rng, a), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(s_projection(m, q, random_target(rng, a), -1.0),
                  std::invalid_argument);
}

TEST_CASE("s-projection is unique across restarts and sits inside the segment") {
  const auto& m = canonical();
  SampleRng rng(7);
  int done = 0;
  while (done < 300) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    const HarmonicPair q = random_on_line(m, rng, a);
    const double s = std::exp(rng.uniform(-1.5, 1.5));
    ++done;
    const ProjectionResult r1 = s_projection(m, q, c, s);
    const ProjectionResult r2 = s_projection(m, q, c, s);
    CHECK(r1.p.right_axis().approx_eq(r2.p.right_axis(), 1e-10));
    CHECK(r1.p.residual() <= m.tol().eps_harm);

    // containment: the solved parameter lies in the admissible bracket
    const auto br = detail::admissible_bracket(m, a, c);
    const CirclePoint v = br.ref.contains(r1.p.right_axis().lo())
                              ? r1.p.right_axis().lo()
                              : r1.p.right_axis().hi();
    const double off = ccw_gap(br.ref.from, v);
    CHECK(off >= br.lo - 1e-9);
    CHECK(off <= br.hi + 1e-9);
  }
}

TEST_CASE("midpoint projection ignores the segment orientation") {
  const auto& m = canonical();
  SampleRng rng(11);
  for (int i = 0; i < 100; ++i) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    const HarmonicPair q = random_on_line(m, rng, a);
    // s = 1 must agree with s-projection at 1/s = 1 trivially, and must be
    // stable under swapping the roles of the two segment ends, which is the
    // same computation with s -> 1/s
    const ProjectionResult mid = midpoint_projection(m, q, c);
    const ProjectionResult mid2 = s_projection(m, q, c, 1.0);
    CHECK(mid.p.right_axis().approx_eq(mid2.p.right_axis(), 1e-10));
  }
}

TEST_CASE("equal-ratio projection degenerates on harmonic inputs") {
  const auto& m = canonical();
  const PointPair a = pair_from_chart(-1, 1);
  const PointPair c(point_from_chart(0), chart_pole());
  const HarmonicPair q(m, a,
                       PointPair(point_from_chart(0.5), point_from_chart(-2.0)));
  const ProjectionResult r = equal_ratio_projection(m, q, c);
  CHECK(r.p.left_axis() == c);
  CHECK(r.p.right_axis() == a);
  CHECK_FALSE(r.s.has_value());
}

TEST_CASE("equal-ratio projection is consistent with the s-projection") {
  const auto& m = canonical();
  SampleRng rng(13);
  int done = 0;
  while (done < 200) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    const HarmonicPair q = random_on_line(m, rng, a);
    if (harmonic_residual(m, c, q.right_axis()) <= 1e-6) continue;
    ++done;
    const ProjectionResult er = equal_ratio_projection(m, q, c);
    REQUIRE(er.s.has_value());
    CHECK(*er.s > 0.0);
    const ProjectionResult sp = s_projection(m, q, c, *er.s);
    CHECK(sp.p.right_axis().approx_eq(er.p.right_axis(), 1e-8));
  }
}

TEST_CASE("the two ratios diverge toward the intersection ends") {
  const auto& m = canonical();
  SampleRng rng(17);
  int done = 0;
  while (done < 100) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    const HarmonicPair q = random_on_line(m, rng, a);
    const PointPair& b = q.right_axis();
    if (harmonic_residual(m, c, b) <= 1e-6) continue;
    const auto bra = detail::admissible_bracket(m, a, c);
    const auto brb = detail::admissible_bracket(m, b, c);
    const double lo = std::max(bra.lo, brb.lo), hi = std::min(bra.hi, brb.hi);
    if (!(hi - lo > 1e-6)) continue;
    ++done;
    const double tb_on_a = detail::projected_coord(m, a, b.lo());
    const double ta_on_b = detail::projected_coord(m, b, a.lo());
    auto log_ratio_gap = [&](double off) {
      const CirclePoint v = advance(bra.ref.from, off);
      const CirclePoint w = reflection(m, c, v);
      const double s_num = std::fabs(detail::projected_coord(m, b, v) - ta_on_b);
      const double s_den = std::fabs(ta_on_b - detail::projected_coord(m, b, w));
      const double t_num = std::fabs(detail::projected_coord(m, a, v) - tb_on_a);
      const double t_den = std::fabs(tb_on_a - detail::projected_coord(m, a, w));
      return std::log(s_num / s_den) - std::log(t_num / t_den);
    };
    const double g_lo = log_ratio_gap(lo + (hi - lo) * 1e-7);
    const double g_hi = log_ratio_gap(hi - (hi - lo) * 1e-7);
    CHECK(g_lo * g_hi < 0.0);
    CHECK(std::fabs(g_lo) > 3.0);
    CHECK(std::fabs(g_hi) > 3.0);
  }
}

TEST_CASE("segment families are monotone") {
  const auto& m = canonical();
  SampleRng rng(19);
  int done = 0;
  while (done < 1000) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    ++done;
    const MonotoneReport rep = monotone_family_check(m, a, c, 16, rng.next_u64());
    CHECK(rep.monotone);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.min_slack > 0.0);
  }
}

TEST_CASE("monotone check flags the degenerate families") {
  const auto& m = canonical();
  SampleRng rng(23);
  const PointPair a = random_axis(rng);
  const MonotoneReport same = monotone_family_check(m, a, a, 8, 1);
  CHECK(same.monotone);
  CHECK(same.degenerate);

  const PointPair diag = pair_from_chart(-1, 1);
  const PointPair perp(point_from_chart(0), chart_pole());
  const MonotoneReport harm = monotone_family_check(m, diag, perp, 8, 1);
  CHECK(harm.monotone);
  CHECK(harm.degenerate);
}

TEST_CASE("midpoint projection strictly contracts along lines") {
  const auto& m = canonical();
  SampleRng rng(29);
  int done = 0;
  double worst_ratio = 0.0;
  while (done < 1000) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (c.approx_eq(a, 1e-6)) continue;
    const HarmonicPair q1 = random_on_line(m, rng, a);
    const HarmonicPair q2 = random_on_line(m, rng, a);
    const double before = line_distance(m, q1, q2);
    if (before < 1e-6) continue;
    ++done;
    const ProjectionResult p1 = midpoint_projection(m, q1, c);
    const ProjectionResult p2 = midpoint_projection(m, q2, c);
    const double after =
        line_distance_on_axis(m, c, p1.p.right_axis(), p2.p.right_axis());
    CHECK(after < before);
    worst_ratio = std::max(worst_ratio, after / before);
  }
  MESSAGE("worst contraction ratio over 1000 samples: ", worst_ratio);
}

TEST_CASE("averaged projections expand over admissible segment pairs") {
  const auto& m = canonical();
  SampleRng rng(31);
  int done = 0;
  double min_slack = 1e300;
  while (done < 1000) {
    const PointPair a = random_axis(rng);
    const PointPair c = random_target(rng, a);
    if (harmonic_residual(m, a, c) <= 1e-6) continue;
    const auto br = detail::admissible_bracket(m, a, c);
    if (!(br.hi - br.lo > 1e-5)) continue;
    const double o1 = rng.uniform(br.lo + (br.hi - br.lo) * 1e-4,
                                  br.hi - (br.hi - br.lo) * 1e-4);
    const double o2 = rng.uniform(br.lo + (br.hi - br.lo) * 1e-4,
                                  br.hi - (br.hi - br.lo) * 1e-4);
    if (std::fabs(o1 - o2) < 1e-6) continue;
    const CirclePoint v = advance(br.ref.from, o1);
    const CirclePoint v2 = advance(br.ref.from, o2);
    const CirclePoint w = reflection(m, c, v), w2 = reflection(m, c, v2);
    // hypothesis of the averaged-expansion inequality
    if (!pairs_separate(PointPair(v, w2), PointPair(v2, w))) continue;
    ++done;
    const double dd = std::fabs(detail::projected_coord(m, c, v) -
                                detail::projected_coord(m, c, v2));
    const double lhs =
        0.5 * (std::fabs(detail::projected_coord(m, a, v) -
                         detail::projected_coord(m, a, v2)) +
               std::fabs(detail::projected_coord(m, a, w) -
                         detail::projected_coord(m, a, w2)));
    CHECK(lhs > dd);
    min_slack = std::min(min_slack, lhs - dd);
  }
  MESSAGE("min averaged-expansion slack over 1000 samples: ", min_slack);
}
