// Projections of harmonic pairs to a line: the s-projection and midpoint
// projection, the equal-ratio projection, and the monotone-family check that
// certifies them.
#pragma once

#include <optional>

#include "harmonia/lines.hpp"
#include "harmonia/rng.hpp"

namespace harmonia {

struct ProjectionResult {
  HarmonicPair p;                 // lies on the target line h_c
  std::optional<double> s;        // realized ratio; absent in degenerate cases
  long long evaluations = 0;      // objective evaluations spent bracketing
  double final_residual = 0.0;    // |objective| at the returned root
};

// The unique p = (c, d) on the admissible segment of h_c such that the right
// axis of q is the s-point of the projected segment v_a w_a. Errors on s <= 0;
// degenerate cases (c = a, or (a,c) harmonic) short-circuit.
ProjectionResult s_projection(const MoebiusStructure& m, const HarmonicPair& q,
                              const PointPair& c, double s);

inline ProjectionResult midpoint_projection(const MoebiusStructure& m,
                                            const HarmonicPair& q,
                                            const PointPair& c) {
  return s_projection(m, q, c, 1.0);
}

// The unique p equalizing |v_b a|/|a w_b| and |v_a b|/|b w_a|; the common
// ratio is returned as s. Harmonic-degenerate inputs return (c,a) or (c,b)
// with s absent.
ProjectionResult equal_ratio_projection(const MoebiusStructure& m,
                                        const HarmonicPair& q, const PointPair& c);

struct MonotoneReport {
  bool monotone = true;
  bool degenerate = false;  // constant or pointwise family
  double min_slack = 0.0;
  int pairs_checked = 0;
};

// Samples parameters along the admissible segment of h_c and verifies that the
// projected segment ends on h_a move monotonically together.
MonotoneReport monotone_family_check(const MoebiusStructure& m, const PointPair& a,
                                     const PointPair& c, int samples,
                                     std::uint64_t seed);

namespace detail {
// Offside bracket of the admissible segment z_c u_c on the reference arc
// c.arc(0); ends are open (they may be arc ends in the shared-endpoint case).
struct AdmissibleBracket {
  Arc ref;          // reference arc of c
  double lo, hi;    // offsets into ref
};
AdmissibleBracket admissible_bracket(const MoebiusStructure& m, const PointPair& a,
                                     const PointPair& c);
}  // namespace detail

}  // namespace harmonia
