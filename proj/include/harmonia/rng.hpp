// Deterministic splittable seeding: every sample, restart and walk derives its
// own generator from (master seed, index), so results do not depend on thread
// count or evaluation order.
#pragma once

#include <cstdint>

#include "harmonia/circle.hpp"

namespace harmonia {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x6a09e667f3bcc909ull + index * 0x9e3779b97f4a7c15ull;
  return splitmix64(s);
}

// Small self-contained generator (xoshiro-free: splitmix stream) with the
// uniform helpers the samplers need. Identical output on every platform.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  CirclePoint angle() { return CirclePoint(uniform(0.0, kTau)); }

  // Uniform in the open arc; inset is the relative distance kept from both
  // endpoints (solver conditioning degrades near them).
  CirclePoint angle_in(const Arc& arc, double inset = 1e-12) {
    double u = uniform01();
    double len = arc.length();
    double off = len * (u * (1.0 - 2.0 * inset) + inset);
    return advance(arc.from, off);
  }

  std::uint64_t index(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace harmonia
