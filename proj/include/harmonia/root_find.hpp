// Bracketing root solvers for the monotone objectives behind conjugates,
// perpendiculars and projections. Plain sign-bisection narrows until both
// bracket ends carry evaluated values, then ITP (interpolate-truncate-project)
// refinement takes over; worst case matches bisection, typical case is far
// fewer evaluations.
#pragma once

#include <cmath>
#include <stdexcept>

namespace harmonia::detail {

struct RootOpts {
  double x_floor = 1e-13;  // stop when bracket width <= x_floor
  int max_iter = 200;
};

// ITP refinement on [lo, hi] with f(lo) = flo, f(hi) = fhi of opposite sign.
template <class F>
double itp_refine(F&& f, double lo, double hi, double flo, double fhi,
                  const RootOpts& o, int used_iters) {
  const double eps = 0.5 * o.x_floor;
  const double k1 = 0.2 / (hi - lo);
  const int n_half = static_cast<int>(std::ceil(std::log2((hi - lo) / (2.0 * eps))));
  const int n_max = n_half + 1;
  int j = 0;
  for (int it = used_iters; it < o.max_iter && (hi - lo) > 2.0 * eps; ++it, ++j) {
    const double xh = 0.5 * (lo + hi);
    const double r = eps * std::ldexp(1.0, n_max - j) - 0.5 * (hi - lo);
    const double delta = k1 * (hi - lo) * (hi - lo);
    const double xf = (fhi * lo - flo * hi) / (fhi - flo);
    const double sigma = (xh >= xf) ? 1.0 : -1.0;
    double xt = (delta <= std::fabs(xh - xf)) ? xf + sigma * delta : xh;
    double xitp = (std::fabs(xt - xh) <= r) ? xt : xh - sigma * r;
    if (xitp <= lo || xitp >= hi) xitp = xh;  // fp guard
    const double y = f(xitp);
    if (y == 0.0) return xitp;
    if ((y > 0.0) == (flo > 0.0)) {
      lo = xitp;
      flo = y;
    } else {
      hi = xitp;
      fhi = y;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of f on (0, span) where the sign of f just inside 0 is sign_lo and the
// sign toward span is -sign_lo; the ends themselves are never evaluated.
template <class F>
double solve_signed_ends(F&& f, double span, int sign_lo, const RootOpts& o) {
  double lo = 0.0, hi = span, flo = 0.0, fhi = 0.0;
  bool have_lo = false, have_hi = false;
  int it = 0;
  while (it < o.max_iter && !(have_lo && have_hi)) {
    const double t = 0.5 * (lo + hi);
    const double ft = f(t);
    ++it;
    if (ft == 0.0) return t;
    if ((ft > 0.0) == (sign_lo > 0)) {
      lo = t;
      flo = ft;
      have_lo = true;
    } else {
      hi = t;
      fhi = ft;
      have_hi = true;
    }
    if (hi - lo <= o.x_floor) return 0.5 * (lo + hi);
  }
  if (!(have_lo && have_hi)) throw std::runtime_error("monotonicity failure");
  return itp_refine(f, lo, hi, flo, fhi, o, it);
}

// Root of f on the open interval (lo, hi) when the end signs are unknown:
// probes walk geometrically toward the ends until the signs straddle.
// Intended for objectives that diverge to opposite infinities at the ends.
template <class F>
double solve_probed_ends(F&& f, double lo, double hi, const RootOpts& o) {
  const double span = hi - lo;
  if (!(span > 0.0)) throw std::invalid_argument("empty bracket");
  double inset = span * 1e-6;
  double a = lo + inset, b = hi - inset;
  double fa = f(a), fb = f(b);
  int tries = 0;
  while ((fa > 0.0) == (fb > 0.0)) {
    inset *= 0.125;
    if (++tries > 20 || inset <= 0.0)
      throw std::runtime_error("bracketing failed: no sign change");
    a = lo + inset;
    b = hi - inset;
    fa = f(a);
    fb = f(b);
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  return itp_refine(f, a, b, fa, fb, o, 2 * (tries + 1));
}

}  // namespace harmonia::detail
