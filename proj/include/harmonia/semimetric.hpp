// Semi-metric families on the circle and the structure object that evaluates
// them. The base semi-metric is everywhere finite; inversion charts d_omega
// are derived views and never enter cross-ratio code.
#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmonia/circle.hpp"
#include "harmonia/tolerances.hpp"

namespace harmonia {

enum class SemiMetricKind {
  CanonicalChordal,  // 2|sin((x-y)/2)|
  SinePerturbed,     // chordal * (1 + eps*sin(x+y))
  PowerPerturbed,    // chordal^(1+eps)
  Tabulated,         // bilinear in angle with symmetrization
};

// Periodic grid of distance values over [0, 2pi)^2, row-major.
struct TabulatedGrid {
  int resolution = 0;
  std::vector<double> values;

  void validate() const;
  double at(double theta_x, double theta_y) const;
};

struct SemiMetricSpec {
  SemiMetricKind kind = SemiMetricKind::CanonicalChordal;
  double epsilon = 0.0;
  std::shared_ptr<const TabulatedGrid> table;

  static SemiMetricSpec canonical();
  static SemiMetricSpec sine_perturbed(double eps);
  static SemiMetricSpec power_perturbed(double eps);
  static SemiMetricSpec tabulated(TabulatedGrid grid);

  static SemiMetricSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string kind_name() const;
};

class MoebiusStructure {
 public:
  explicit MoebiusStructure(SemiMetricSpec spec, Tolerances tol = {});

  // The base semi-metric; finite everywhere, 0 iff x == y.
  double dist(CirclePoint x, CirclePoint y) const {
    if (x == y) return 0.0;
    const double chord = 2.0 * std::fabs(std::sin(0.5 * (x.angle() - y.angle())));
    switch (spec_.kind) {
      case SemiMetricKind::CanonicalChordal:
        return chord;
      case SemiMetricKind::SinePerturbed:
        return chord * (1.0 + spec_.epsilon * std::sin(x.angle() + y.angle()));
      case SemiMetricKind::PowerPerturbed:
        return std::pow(chord, 1.0 + spec_.epsilon);
      case SemiMetricKind::Tabulated:
        return spec_.table->at(x.angle(), y.angle());
    }
    return chord;
  }

  // Inversion chart at omega: d(x,y) / (d(x,omega) d(y,omega)); +inf exactly
  // when one argument is omega and the other is not.
  double dist_inverted(CirclePoint omega, CirclePoint x, CirclePoint y) const {
    if (x == y) return 0.0;
    if (x == omega || y == omega) return std::numeric_limits<double>::infinity();
    return dist(x, y) / (dist(x, omega) * dist(y, omega));
  }

  const SemiMetricSpec& spec() const { return spec_; }
  const Tolerances& tol() const { return tol_; }

 private:
  SemiMetricSpec spec_;
  Tolerances tol_;
};

}  // namespace harmonia
