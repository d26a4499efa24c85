#pragma once

namespace harmonia {

// Numerical policy shared by all solvers and checkers.
struct Tolerances {
  double eps_cr = 1e-9;        // log-domain cross-ratio comparisons
  double eps_harm = 1e-10;     // harmonicity log-residual acceptance
  double eps_angle = 1e-12;    // angular comparisons of solver outputs
  double angle_floor = 1e-13;  // bracket width at which root solvers stop
  int solver_max_iter = 200;
  int sampler_retry_budget = 100;
  double nm_diameter = 1e-10;  // simplex convergence diameter
  int nm_restarts = 8;
  int walk_cap = 4;            // max intermediate axes in random-walk paths
};

}  // namespace harmonia
