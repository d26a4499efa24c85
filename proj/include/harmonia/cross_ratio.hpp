// Cross-ratio triples on the log plane a1+a2+a3 = 0, their equivariance under
// entry permutations, and the ptolemaic residual.
#pragma once

#include <array>
#include <cmath>

#include "harmonia/semimetric.hpp"

namespace harmonia {

struct CrossRatioTriple {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double sum() const { return a1 + a2 + a3; }
  double max_norm() const {
    return std::max({std::fabs(a1), std::fabs(a2), std::fabs(a3)});
  }
};

using Tuple4 = std::array<CirclePoint, 4>;

// perm[i] names the source slot of entry i: apply_perm(p, q)[i] = q[p[i]].
using Perm4 = std::array<int, 4>;

inline Tuple4 apply_perm(const Perm4& p, const Tuple4& q) {
  return {q[p[0]], q[p[1]], q[p[2]], q[p[3]]};
}

const std::array<Perm4, 24>& all_permutations4();

// (ln cr1, ln cr2, ln cr3) from the base semi-metric; errors on repeated points.
CrossRatioTriple cross_ratio_triple(const MoebiusStructure& m, const Tuple4& q);

// Same triple evaluated in the inversion chart at omega (tuple must avoid
// omega). Exists as the independent route for the chart-invariance checks.
CrossRatioTriple cross_ratio_triple_inverted(const MoebiusStructure& m,
                                             CirclePoint omega, const Tuple4& q);

// Image of a triple under an entry permutation, via the pairing
// correspondence (12)(34), (13)(24), (14)(23).
CrossRatioTriple permuted_triple(const CrossRatioTriple& t, const Perm4& p);

// d(x,z)d(y,u) + d(x,u)d(y,z) - d(x,y)d(z,u) for q = (x,y,z,u); admissible
// tuples allowed (entries may repeat up to twice).
double ptolemaic_residual(const MoebiusStructure& m, const Tuple4& q);

// Minimum of the residual over the three pairings of q.
double ptolemaic_min_residual(const MoebiusStructure& m, const Tuple4& q);

}  // namespace harmonia
