#include "harmonia/cross_ratio.hpp"

#include <algorithm>
#include <stdexcept>

namespace harmonia {

namespace {

void require_nondegenerate(const Tuple4& q) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (q[i] == q[j]) throw std::invalid_argument("degenerate 4-tuple");
}

// Log pairing products: lp[0] = ln d12 + ln d34, lp[1] = ln d13 + ln d24,
// lp[2] = ln d14 + ln d23. The triple is (lp1-lp2, lp2-lp0, lp0-lp1).
template <class Dist>
CrossRatioTriple triple_from(Dist&& d, const Tuple4& q) {
  const double lp0 = std::log(d(q[0], q[1])) + std::log(d(q[2], q[3]));
  const double lp1 = std::log(d(q[0], q[2])) + std::log(d(q[1], q[3]));
  const double lp2 = std::log(d(q[0], q[3])) + std::log(d(q[1], q[2]));
  return {lp1 - lp2, lp2 - lp0, lp0 - lp1};
}

}  // namespace

const std::array<Perm4, 24>& all_permutations4() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out{};
    Perm4 p = {0, 1, 2, 3};
    int k = 0;
    do {
      out[k++] = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

CrossRatioTriple cross_ratio_triple(const MoebiusStructure& m, const Tuple4& q) {
  require_nondegenerate(q);
  return triple_from([&](CirclePoint a, CirclePoint b) { return m.dist(a, b); }, q);
}

CrossRatioTriple cross_ratio_triple_inverted(const MoebiusStructure& m,
                                             CirclePoint omega, const Tuple4& q) {
  require_nondegenerate(q);
  for (const auto& p : q)
    if (p == omega) throw std::invalid_argument("tuple meets the chart pole");
  return triple_from(
      [&](CirclePoint a, CirclePoint b) { return m.dist_inverted(omega, a, b); }, q);
}

CrossRatioTriple permuted_triple(const CrossRatioTriple& t, const Perm4& p) {
  // Reconstruct log pairing products up to a common shift (u0 = 0), permute
  // them by the induced pairing map, and re-difference. Coordinate k of the
  // permuted tuple corresponds to the pairing {p[0], p[k]} of the original.
  const double u[3] = {0.0, -t.a3, t.a2};
  auto pairing_index = [&](int k) {
    // index of the original pairing {{p0,pk},{rest}}: 0 if it pairs 0 with 1,
    // 1 if with 2, 2 if with 3.
    int partner;
    if (p[0] == 0) {
      partner = p[k];
    } else if (p[k] == 0) {
      partner = p[0];
    } else {
      partner = 6 - p[0] - p[k];  // the pair holding 0; all slots sum to 6
    }
    return partner - 1;
  };
  double up[3];
  const int slot[3] = {1, 2, 3};
  for (int k = 0; k < 3; ++k) up[k] = u[pairing_index(slot[k])];
  return {up[1] - up[2], up[2] - up[0], up[0] - up[1]};
}

double ptolemaic_residual(const MoebiusStructure& m, const Tuple4& q) {
  const double a = m.dist(q[0], q[1]) * m.dist(q[2], q[3]);
  const double b = m.dist(q[0], q[2]) * m.dist(q[1], q[3]);
  const double c = m.dist(q[0], q[3]) * m.dist(q[1], q[2]);
  return b + c - a;
}

double ptolemaic_min_residual(const MoebiusStructure& m, const Tuple4& q) {
  const double a = m.dist(q[0], q[1]) * m.dist(q[2], q[3]);
  const double b = m.dist(q[0], q[2]) * m.dist(q[1], q[3]);
  const double c = m.dist(q[0], q[3]) * m.dist(q[1], q[2]);
  return a + b + c - 2.0 * std::max({a, b, c});
}

}  // namespace harmonia
