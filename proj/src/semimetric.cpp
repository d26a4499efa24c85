#include "harmonia/semimetric.hpp"

#include <stdexcept>

namespace harmonia {

void TabulatedGrid::validate() const {
  if (resolution < 4) throw std::invalid_argument("tabulated: resolution < 4");
  if (values.size() != static_cast<size_t>(resolution) * resolution)
    throw std::invalid_argument("tabulated: values size != resolution^2");
  for (int i = 0; i < resolution; ++i) {
    if (values[static_cast<size_t>(i) * resolution + i] != 0.0)
      throw std::invalid_argument("tabulated: nonzero diagonal entry");
    for (int j = 0; j < resolution; ++j) {
      double v = values[static_cast<size_t>(i) * resolution + j];
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("tabulated: negative or nonfinite entry");
      if (i != j && 0.5 * (v + values[static_cast<size_t>(j) * resolution + i]) <= 0.0)
        throw std::invalid_argument("tabulated: zero off-diagonal after symmetrization");
    }
  }
}

double TabulatedGrid::at(double tx, double ty) const {
  const int n = resolution;
  const double step = kTau / n;
  auto cell = [&](double t, int& i, double& f) {
    double s = t / step;
    i = static_cast<int>(std::floor(s)) % n;
    if (i < 0) i += n;
    f = s - std::floor(s);
  };
  int ix, iy;
  double fx, fy;
  cell(tx, ix, fx);
  cell(ty, iy, fy);
  const int ix1 = (ix + 1) % n, iy1 = (iy + 1) % n;
  auto raw = [&](int i, int j) {
    return values[static_cast<size_t>(i) * n + j];
  };
  // symmetrized bilinear interpolation
  auto sym = [&](int i, int j) { return 0.5 * (raw(i, j) + raw(j, i)); };
  const double v00 = sym(ix, iy), v01 = sym(ix, iy1);
  const double v10 = sym(ix1, iy), v11 = sym(ix1, iy1);
  return (1 - fx) * ((1 - fy) * v00 + fy * v01) + fx * ((1 - fy) * v10 + fy * v11);
}

SemiMetricSpec SemiMetricSpec::canonical() {
  return SemiMetricSpec{SemiMetricKind::CanonicalChordal, 0.0, nullptr};
}

SemiMetricSpec SemiMetricSpec::sine_perturbed(double eps) {
  if (std::fabs(eps) >= 1.0)
    throw std::invalid_argument("sine-perturbed: |epsilon| must be < 1");
  return SemiMetricSpec{SemiMetricKind::SinePerturbed, eps, nullptr};
}

SemiMetricSpec SemiMetricSpec::power_perturbed(double eps) {
  if (eps <= -1.0)
    throw std::invalid_argument("power-perturbed: epsilon must be > -1");
  return SemiMetricSpec{SemiMetricKind::PowerPerturbed, eps, nullptr};
}

SemiMetricSpec SemiMetricSpec::tabulated(TabulatedGrid grid) {
  grid.validate();
  return SemiMetricSpec{SemiMetricKind::Tabulated, 0.0,
                        std::make_shared<const TabulatedGrid>(std::move(grid))};
}

SemiMetricSpec SemiMetricSpec::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "canonical-chordal" || kind == "canonical") return canonical();
  if (kind == "sine-perturbed") return sine_perturbed(j.at("epsilon").get<double>());
  if (kind == "power-perturbed") return power_perturbed(j.at("epsilon").get<double>());
  if (kind == "tabulated") {
    const auto& t = j.at("table");
    TabulatedGrid grid;
    grid.resolution = t.at("resolution").get<int>();
    grid.values = t.at("values").get<std::vector<double>>();
    return tabulated(std::move(grid));
  }
  throw std::invalid_argument("unknown structure kind: " + kind);
}

nlohmann::json SemiMetricSpec::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name();
  switch (kind) {
    case SemiMetricKind::SinePerturbed:
    case SemiMetricKind::PowerPerturbed:
      j["epsilon"] = epsilon;
      break;
    case SemiMetricKind::Tabulated:
      j["table"] = {{"resolution", table->resolution}, {"values", table->values}};
      break;
    default:
      break;
  }
  return j;
}

std::string SemiMetricSpec::kind_name() const {
  switch (kind) {
    case SemiMetricKind::CanonicalChordal: return "canonical-chordal";
    case SemiMetricKind::SinePerturbed: return "sine-perturbed";
    case SemiMetricKind::PowerPerturbed: return "power-perturbed";
    case SemiMetricKind::Tabulated: return "tabulated";
  }
  return "?";
}

MoebiusStructure::MoebiusStructure(SemiMetricSpec spec, Tolerances tol)
    : spec_(std::move(spec)), tol_(tol) {
  if (spec_.kind == SemiMetricKind::Tabulated && !spec_.table)
    throw std::invalid_argument("tabulated structure without table");
}

}  // namespace harmonia
