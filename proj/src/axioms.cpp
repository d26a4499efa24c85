#include "harmonia/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmonia/harmonic.hpp"
#include "harmonia/rng.hpp"

namespace harmonia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr size_t kMaxCounterexamples = 32;

struct SampleOutcome {
  double slack = kInf;
  std::vector<double> angles;
  bool ok = false;
};

// Runs the per-sample kernel (exception-safe for parallel regions) and folds
// the outcomes in index order.
template <class Kernel>
AxiomReport run_checker(const std::string& axiom, long long n, std::uint64_t seed,
                        ExecPolicy policy, Kernel&& kernel) {
  if (n < 1) throw std::invalid_argument("empty sample budget");
  std::vector<SampleOutcome> out(static_cast<size_t>(n));
  for_each_index(n, policy, [&](long long i) {
    try {
      out[static_cast<size_t>(i)] = kernel(derive_seed(seed, static_cast<std::uint64_t>(i)));
    } catch (const std::exception&) {
      out[static_cast<size_t>(i)].ok = false;
    }
  });
  AxiomReport rep;
  rep.axiom = axiom;
  rep.seed = seed;
  rep.attempted = n;
  rep.margin = kInf;
  rep.slacks.assign(static_cast<size_t>(n),
                    std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 0; i < out.size(); ++i) {
    auto& o = out[i];
    if (!o.ok) continue;
    ++rep.valid;
    rep.slacks[i] = o.slack;
    if (o.slack < rep.margin) rep.margin = o.slack;
    if (o.slack < 0.0) {
      ++rep.violations;
      if (rep.counterexamples.size() < kMaxCounterexamples)
        rep.counterexamples.push_back({std::move(o.angles), o.slack});
    }
  }
  if (rep.valid == 0) rep.margin = 0.0;
  return rep;
}

std::array<double, 4> distinct_sorted_angles(SampleRng& rng) {
  std::array<double, 4> a;
  while (true) {
    for (auto& v : a) v = rng.uniform(0.0, kTau);
    std::sort(a.begin(), a.end());
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      if (a[i + 1] - a[i] < 1e-9) ok = false;
    if (a[3] - a[0] > kTau - 1e-9) ok = false;
    if (ok) return a;
  }
}

}  // namespace

nlohmann::ordered_json AxiomReport::to_json() const {
  nlohmann::ordered_json j;
  j["axiom"] = axiom;
  j["harmonicity_convention"] = harmonicity_convention;
  j["seed"] = seed;
  j["attempted"] = attempted;
  j["valid"] = valid;
  j["margin"] = margin;
  j["violations"] = violations;
  auto ces = nlohmann::ordered_json::array();
  for (const auto& ce : counterexamples)
    ces.push_back({{"angles", ce.angles}, {"slack", ce.slack}});
  j["counterexamples"] = std::move(ces);
  j["slacks"] = slacks;
  return j;
}

AxiomReport check_monotone(const MoebiusStructure& m, long long n,
                           std::uint64_t seed, ExecPolicy policy) {
  return run_checker("monotone", n, seed, policy, [&](std::uint64_t s) {
    SampleRng rng(s);
    SampleOutcome o;
    const auto a = distinct_sorted_angles(rng);
    if (rng.next_u64() & 1) {
      // separating pairs: (x,y) = (a0,a2), (z,u) = (a1,a3)
      const CirclePoint x{a[0]}, z{a[1]}, y{a[2]}, u{a[3]};
      const double big = std::log(m.dist(x, y)) + std::log(m.dist(z, u));
      const double c1 = std::log(m.dist(x, z)) + std::log(m.dist(y, u));
      const double c2 = std::log(m.dist(x, u)) + std::log(m.dist(y, z));
      o.slack = big - std::max(c1, c2);
      o.angles = {x.angle(), y.angle(), z.angle(), u.angle()};
    } else {
      // nested intervals in the chart at u: x < z < y going away from u
      const CirclePoint u{a[0]}, x{a[1]}, z{a[2]}, y{a[3]};
      o.slack = std::log(m.dist_inverted(u, x, y)) - std::log(m.dist_inverted(u, x, z));
      o.angles = {x.angle(), y.angle(), z.angle(), u.angle()};
    }
    o.ok = std::isfinite(o.slack);
    return o;
  });
}

AxiomReport check_nonzero(const MoebiusStructure& m, long long n,
                          std::uint64_t seed, ExecPolicy policy) {
  return run_checker("nonzero", n, seed, policy, [&](std::uint64_t s) {
    SampleRng rng(s);
    SampleOutcome o;
    const auto a = distinct_sorted_angles(rng);
    // shuffle the roles so all orderings appear
    std::array<int, 4> idx = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i)
      std::swap(idx[i], idx[rng.index(static_cast<std::uint64_t>(i) + 1)]);
    const Tuple4 q = {CirclePoint{a[idx[0]]}, CirclePoint{a[idx[1]]},
                      CirclePoint{a[idx[2]]}, CirclePoint{a[idx[3]]}};
    o.slack = cross_ratio_triple(m, q).max_norm();
    o.angles = {q[0].angle(), q[1].angle(), q[2].angle(), q[3].angle()};
    o.ok = std::isfinite(o.slack);
    return o;
  });
}

AxiomReport check_ptolemaic(const MoebiusStructure& m, long long n,
                            std::uint64_t seed, ExecPolicy policy) {
  return run_checker("ptolemaic", n, seed, policy, [&](std::uint64_t s) {
    SampleRng rng(s);
    SampleOutcome o;
    const auto a = distinct_sorted_angles(rng);
    std::array<int, 4> idx = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i)
      std::swap(idx[i], idx[rng.index(static_cast<std::uint64_t>(i) + 1)]);
    const Tuple4 q = {CirclePoint{a[idx[0]]}, CirclePoint{a[idx[1]]},
                      CirclePoint{a[idx[2]]}, CirclePoint{a[idx[3]]}};
    o.slack = ptolemaic_min_residual(m, q);
    o.angles = {q[0].angle(), q[1].angle(), q[2].angle(), q[3].angle()};
    o.ok = std::isfinite(o.slack);
    return o;
  });
}

SeventupleSample sample_increment_tuple(const MoebiusStructure& m,
                                        std::uint64_t seed) {
  SampleRng rng(seed);
  const double eps_harm = m.tol().eps_harm;
  for (int attempt = 0; attempt < m.tol().sampler_retry_budget; ++attempt) {
    std::array<double, 3> t;
    for (auto& v : t) v = rng.uniform(0.0, kTau);
    std::sort(t.begin(), t.end());
    if (t[1] - t[0] < 1e-6 || t[2] - t[1] < 1e-6 || t[2] - t[0] > kTau - 1e-6)
      continue;
    const CirclePoint x1{t[0]}, x3{t[1]}, x5{t[2]};
    CirclePoint x6, x4;
    try {
      x6 = conjugate(m, PointPair(x1, x5), x3);
      const CirclePoint x2 = rng.angle_in(Arc(x1, x3));
      x4 = conjugate(m, PointPair(x3, x6), x2);
      const CirclePoint x7 = rng.angle_in(Arc(x6, x1));
      const SeventupleSample sample{
          {x1, x2, x3, x4, x5, x6, x7},
          harmonic_residual(m, PointPair(x1, x5), PointPair(x3, x6)),
          harmonic_residual(m, PointPair(x2, x4), PointPair(x3, x6))};
      // cyclic order 1234567: offsets from x1 strictly increasing
      double prev = 0.0;
      bool ordered = true;
      for (int i = 1; i < 7; ++i) {
        const double off = ccw_gap(x1, sample.x[i]);
        if (off <= prev) ordered = false;
        prev = off;
      }
      if (!ordered) continue;
      if (sample.residual_247 > eps_harm || sample.residual_157 > eps_harm)
        continue;
      return sample;
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("sampler starvation");
}

AxiomReport check_increment(const MoebiusStructure& m, long long n,
                            std::uint64_t seed, ExecPolicy policy) {
  AxiomReport rep =
      run_checker("increment", n, seed, policy, [&](std::uint64_t s) {
        SampleOutcome o;
        const SeventupleSample smp = sample_increment_tuple(m, s);
        const auto& x = smp.x;
        const Tuple4 q345 = {x[0], x[1], x[5], x[6]};
        const Tuple4 q123 = {x[3], x[4], x[5], x[6]};
        o.slack = cross_ratio_triple(m, q345).a1 - cross_ratio_triple(m, q123).a1;
        o.angles.reserve(7);
        for (const auto& p : x) o.angles.push_back(p.angle());
        o.ok = std::isfinite(o.slack);
        return o;
      });
  // sampler starvation is an error, not a silent skip
  if (rep.valid == 0)
    throw std::runtime_error("sampler starvation");
  return rep;
}

}  // namespace harmonia
