// Serial vs OpenMP timings for the sample-parallel kernels.
#include <chrono>
#include <cstdio>

#include "harmonia/axioms.hpp"
#include "harmonia/experiment.hpp"

using namespace harmonia;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  const MoebiusStructure m(SemiMetricSpec::canonical());

  {
    const long long n = 200000;
    double s = 0, p = 0;
    s = time_ms([&] { check_monotone(m, n, 7, serial_policy()); });
    p = time_ms([&] { check_monotone(m, n, 7, ExecPolicy{}); });
    report("check_monotone", s, p);
  }
  {
    const long long n = 20000;
    double s = 0, p = 0;
    s = time_ms([&] { check_increment(m, n, 7, serial_policy()); });
    p = time_ms([&] { check_increment(m, n, 7, ExecPolicy{}); });
    report("check_increment", s, p);
  }
  {
    ExperimentConfig cfg;
    cfg.command = Command::ContractionSweep;
    cfg.n = 2000;
    cfg.seed = 7;
    double s = 0, p = 0;
    cfg.policy = serial_policy();
    s = time_ms([&] { render_experiment(cfg); });
    cfg.policy = ExecPolicy{};
    p = time_ms([&] { render_experiment(cfg); });
    report("contraction-sweep", s, p);
  }
  {
    ExperimentConfig cfg;
    cfg.command = Command::VerifyGeodesic;
    cfg.pairs = 8;
    cfg.budget = 2000;
    cfg.seed = 7;
    double s = 0, p = 0;
    cfg.policy = serial_policy();
    s = time_ms([&] { render_experiment(cfg); });
    cfg.policy = ExecPolicy{};
    p = time_ms([&] { render_experiment(cfg); });
    report("verify-geodesic", s, p);
  }
  return 0;
}
