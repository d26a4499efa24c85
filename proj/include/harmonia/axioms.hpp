// Statistical falsifiers for the monotonicity, nonzero-value, increment and
// ptolemaic properties, with deterministic per-sample seeding and
// counterexample reporting.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmonia/cross_ratio.hpp"
#include "harmonia/parallel.hpp"

namespace harmonia {

struct Counterexample {
  std::vector<double> angles;  // the sampled point tuple
  double slack;                // the violated margin (negative)
};

struct AxiomReport {
  std::string axiom;
  std::string harmonicity_convention = "separating-pairs-eq4";
  long long attempted = 0;
  long long valid = 0;
  double margin = 0.0;  // min over valid samples of the strict-inequality slack
  long long violations = 0;
  std::vector<Counterexample> counterexamples;  // capped at 32
  std::uint64_t seed = 0;
  std::vector<double> slacks;  // per-sample, index order

  nlohmann::ordered_json to_json() const;
};

// Axiom (M) on separating 4-tuples plus the nested-interval corollary form.
AxiomReport check_monotone(const MoebiusStructure& m, long long n,
                           std::uint64_t seed, ExecPolicy policy = {});

// Margin is the max-norm of the cross-ratio triple on random tuples.
AxiomReport check_nonzero(const MoebiusStructure& m, long long n,
                          std::uint64_t seed, ExecPolicy policy = {});

// Ptolemaic inequality, evaluated over the three pairings of each sample.
AxiomReport check_ptolemaic(const MoebiusStructure& m, long long n,
                            std::uint64_t seed, ExecPolicy policy = {});

// x1..x7 in cyclic order with the two constrained harmonicity conditions.
struct SeventupleSample {
  std::array<CirclePoint, 7> x;
  double residual_247 = 0.0;  // pair ((x1,x5),(x3,x6))
  double residual_157 = 0.0;  // pair ((x2,x4),(x3,x6))
};

// Draws x1,x3,x5, solves x6 and x4 by harmonic conjugation, fills x2, x7, and
// rejects until the cyclic order 1234567 holds. Errors with "sampler
// starvation" when the retry budget runs out.
SeventupleSample sample_increment_tuple(const MoebiusStructure& m,
                                        std::uint64_t seed);

// Axiom (I): ln cr1(q_345) - ln cr1(q_123) over constrained 7-tuples.
AxiomReport check_increment(const MoebiusStructure& m, long long n,
                            std::uint64_t seed, ExecPolicy policy = {});

}  // namespace harmonia
