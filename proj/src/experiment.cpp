#include "harmonia/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "harmonia/projections.hpp"
#include "harmonia/rng.hpp"
#include "harmonia/zigzag.hpp"

namespace harmonia {

namespace {

struct Row {
  bool ok = true;
  std::string text;  // pre-rendered CSV tail (after the index column)
  nlohmann::ordered_json json;
};

std::string tolerances_line(const Tolerances& t) {
  return "eps_cr=" + format_g17(t.eps_cr) + " eps_harm=" + format_g17(t.eps_harm) +
         " eps_angle=" + format_g17(t.eps_angle) +
         " angle_floor=" + format_g17(t.angle_floor);
}

nlohmann::ordered_json header_json(const ExperimentConfig& c) {
  nlohmann::ordered_json h;
  h["command"] = command_name(c.command);
  h["structure"] = c.structure.to_json();
  h["n"] = c.n;
  h["pairs"] = c.pairs;
  h["budget"] = c.budget;
  h["seed"] = c.seed;
  Tolerances t;
  h["tolerances"] = {{"eps_cr", t.eps_cr},
                     {"eps_harm", t.eps_harm},
                     {"eps_angle", t.eps_angle},
                     {"angle_floor", t.angle_floor}};
  h["harmonicity_convention"] = "separating-pairs-eq4";
  return h;
}

std::string csv_header(const ExperimentConfig& c,
                       const std::vector<std::string>& extra_comments,
                       const std::string& columns) {
  std::string out;
  out += "# harmonia ";
  out += command_name(c.command);
  out += "\n# structure=" + c.structure.to_json().dump();
  out += "\n# n=" + std::to_string(c.n) + " pairs=" + std::to_string(c.pairs) +
         " budget=" + std::to_string(c.budget) + " seed=" + std::to_string(c.seed);
  out += "\n# " + tolerances_line(Tolerances{});
  out += "\n# harmonicity_convention=separating-pairs-eq4\n";
  for (const auto& line : extra_comments) out += "# " + line + "\n";
  out += columns + "\n";
  return out;
}

// Random harmonic pair: a random well-separated axis plus the projection of a
// random off-axis point.
HarmonicPair random_pair_on_random_axis(const MoebiusStructure& m, SampleRng& rng,
                                        PointPair* axis_out = nullptr) {
  while (true) {
    const CirclePoint p = rng.angle(), q = rng.angle();
    if (p.approx_eq(q, 1e-3)) continue;
    const PointPair axis(p, q);
    const CirclePoint z = rng.angle();
    if (z.approx_eq(p, 1e-4) || z.approx_eq(q, 1e-4)) continue;
    if (axis_out) *axis_out = axis;
    return project_point(m, z, axis);
  }
}

std::string render_check_axioms(const ExperimentConfig& c, const MoebiusStructure& m) {
  std::vector<AxiomReport> reports;
  reports.push_back(check_monotone(m, c.n, derive_seed(c.seed, 1), c.policy));
  reports.push_back(check_nonzero(m, c.n, derive_seed(c.seed, 2), c.policy));
  reports.push_back(check_ptolemaic(m, c.n, derive_seed(c.seed, 3), c.policy));
  reports.push_back(check_increment(m, c.n, derive_seed(c.seed, 4), c.policy));

  if (c.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["header"] = header_json(c);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["reports"] = std::move(arr);
    return j.dump(1) + "\n";
  }
  std::vector<std::string> comments;
  for (const auto& r : reports)
    comments.push_back("margin axiom=" + r.axiom + " value=" + format_g17(r.margin) +
                       " violations=" + std::to_string(r.violations));
  std::string out = csv_header(c, comments, "axiom,sample,status,slack");
  for (const auto& r : reports)
    for (size_t i = 0; i < r.slacks.size(); ++i) {
      const bool ok = !std::isnan(r.slacks[i]);
      out += r.axiom + "," + std::to_string(i) + "," + (ok ? "ok" : "error") + "," +
             (ok ? format_g17(r.slacks[i]) : "") + "\n";
    }
  return out;
}

std::string render_verify_geodesic(const ExperimentConfig& c,
                                   const MoebiusStructure& m) {
  std::vector<Row> rows(static_cast<size_t>(c.pairs));
  for_each_index(c.pairs, c.policy, [&](long long i) {
    Row& row = rows[static_cast<size_t>(i)];
    try {
      SampleRng rng(derive_seed(c.seed, static_cast<std::uint64_t>(i)));
      PointPair axis{CirclePoint{0.0}, CirclePoint{1.0}};
      while (true) {
        const CirclePoint p = rng.angle(), q = rng.angle();
        if (p.approx_eq(q, 1e-3)) continue;
        axis = PointPair(p, q);
        break;
      }
      const Line line = Line::default_oriented(axis);
      const CirclePoint z = rng.angle_in(line.positive);
      CirclePoint z2 = rng.angle_in(line.positive);
      while (z2.approx_eq(z, 1e-6)) z2 = rng.angle_in(line.positive);
      const HarmonicPair q1 = project_point(m, z, axis);
      const HarmonicPair q2 = project_point(m, z2, axis);
      const GeodesicReport rep = verify_geodesic(
          m, line, q1, q2, c.budget, derive_seed(c.seed, 0x9e0000u + i));
      row.text = format_g17(axis.lo().angle()) + "," + format_g17(axis.hi().angle()) +
                 "," + format_g17(rep.segment_length) + "," +
                 format_g17(rep.min_found) + "," + format_g17(rep.margin) + "," +
                 std::to_string(rep.paths_tried) + "," +
                 std::to_string(rep.best.sides());
      row.json = {{"pair", i},
                  {"axis", {axis.lo().angle(), axis.hi().angle()}},
                  {"segment_length", rep.segment_length},
                  {"min_found", rep.min_found},
                  {"margin", rep.margin},
                  {"paths_tried", rep.paths_tried},
                  {"best_path", rep.best.to_json()}};
    } catch (const std::exception& e) {
      row.ok = false;
      row.json = {{"pair", i}, {"error", std::string(e.what())}};
    }
  });
  if (c.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["header"] = header_json(c);
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : rows) arr.push_back(std::move(r.json));
    j["rows"] = std::move(arr);
    return j.dump(1) + "\n";
  }
  std::string out = csv_header(
      c, {}, "pair,status,axis_lo,axis_hi,segment_length,min_found,margin,paths,best_sides");
  for (size_t i = 0; i < rows.size(); ++i)
    out += std::to_string(i) + "," + (rows[i].ok ? "ok," + rows[i].text : "error,,,,,,,") +
           "\n";
  return out;
}

std::string render_contraction(const ExperimentConfig& c, const MoebiusStructure& m) {
  std::vector<Row> rows(static_cast<size_t>(c.n));
  for_each_index(c.n, c.policy, [&](long long i) {
    Row& row = rows[static_cast<size_t>(i)];
    try {
      SampleRng rng(derive_seed(c.seed, static_cast<std::uint64_t>(i)));
      PointPair a{CirclePoint{0.0}, CirclePoint{1.0}};
      PointPair cc = a;
      while (true) {
        const CirclePoint p = rng.angle(), q = rng.angle();
        if (p.approx_eq(q, 1e-3)) continue;
        a = PointPair(p, q);
        const CirclePoint r = rng.angle(), s = rng.angle();
        if (r.approx_eq(s, 1e-3)) continue;
        if (r.approx_eq(p, 1e-4) || r.approx_eq(q, 1e-4) ||
            s.approx_eq(p, 1e-4) || s.approx_eq(q, 1e-4))
          continue;
        cc = PointPair(r, s);
        if (cc.approx_eq(a, 1e-3)) continue;
        break;
      }
      const Arc arc = a.arc(0);
      const CirclePoint z = rng.angle_in(arc);
      CirclePoint z2 = rng.angle_in(arc);
      while (z2.approx_eq(z, 1e-6)) z2 = rng.angle_in(arc);
      const HarmonicPair q1 = project_point(m, z, a);
      const HarmonicPair q2 = project_point(m, z2, a);
      const double before = line_distance(m, q1, q2);
      const ProjectionResult p1 = midpoint_projection(m, q1, cc);
      const ProjectionResult p2 = midpoint_projection(m, q2, cc);
      const double after =
          line_distance_on_axis(m, cc, p1.p.right_axis(), p2.p.right_axis());
      const double ratio = after / before;
      row.text = format_g17(before) + "," + format_g17(after) + "," +
                 format_g17(ratio) + "," + format_g17(before - after);
      row.json = {{"sample", i},
                  {"before", before},
                  {"after", after},
                  {"ratio", ratio},
                  {"slack", before - after}};
    } catch (const std::exception& e) {
      row.ok = false;
      row.json = {{"sample", i}, {"error", std::string(e.what())}};
    }
  });
  if (c.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["header"] = header_json(c);
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : rows) arr.push_back(std::move(r.json));
    j["rows"] = std::move(arr);
    return j.dump(1) + "\n";
  }
  std::string out = csv_header(c, {}, "sample,status,before,after,ratio,slack");
  for (size_t i = 0; i < rows.size(); ++i)
    out += std::to_string(i) + "," + (rows[i].ok ? "ok," + rows[i].text : "error,,,,") +
           "\n";
  return out;
}

std::string render_delta(const ExperimentConfig& c, const MoebiusStructure& m) {
  std::vector<Row> rows(static_cast<size_t>(c.pairs));
  for_each_index(c.pairs, c.policy, [&](long long i) {
    Row& row = rows[static_cast<size_t>(i)];
    try {
      SampleRng rng(derive_seed(c.seed, static_cast<std::uint64_t>(i)));
      const HarmonicPair q1 = random_pair_on_random_axis(m, rng);
      const HarmonicPair q2 = random_pair_on_random_axis(m, rng);
      const DeltaEstimate est =
          delta_upper(m, q1, q2, c.budget, derive_seed(c.seed, 0xde0000u + i));
      row.text = format_g17(est.upper) + "," + std::to_string(est.witness.sides()) +
                 "," + std::to_string(est.budget_consumed);
      row.json = {{"pair", i},
                  {"upper", est.upper},
                  {"witness", est.witness.to_json()},
                  {"budget_consumed", est.budget_consumed}};
    } catch (const std::exception& e) {
      row.ok = false;
      row.json = {{"pair", i}, {"error", std::string(e.what())}};
    }
  });
  if (c.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["header"] = header_json(c);
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : rows) arr.push_back(std::move(r.json));
    j["rows"] = std::move(arr);
    return j.dump(1) + "\n";
  }
  std::string out = csv_header(c, {}, "pair,status,upper,witness_sides,budget_consumed");
  for (size_t i = 0; i < rows.size(); ++i)
    out += std::to_string(i) + "," + (rows[i].ok ? "ok," + rows[i].text : "error,,,") +
           "\n";
  return out;
}

std::string render_closed_paths(const ExperimentConfig& c, const MoebiusStructure& m) {
  std::vector<Row> rows(static_cast<size_t>(c.n));
  for_each_index(c.n, c.policy, [&](long long i) {
    Row& row = rows[static_cast<size_t>(i)];
    try {
      SampleRng rng(derive_seed(c.seed, static_cast<std::uint64_t>(i)));
      PointPair a{CirclePoint{0.0}, CirclePoint{1.0}};
      while (true) {
        const CirclePoint p = rng.angle(), q = rng.angle();
        if (p.approx_eq(q, 1e-3)) continue;
        a = PointPair(p, q);
        break;
      }
      const Arc arc = a.arc(rng.next_u64() & 1 ? 1 : 0);
      const CirclePoint z = rng.angle_in(arc);
      CirclePoint z2 = rng.angle_in(arc);
      while (z2.approx_eq(z, 1e-6)) z2 = rng.angle_in(arc);
      const HarmonicPair q1 = project_point(m, z, a);
      const HarmonicPair q2 = project_point(m, z2, a);
      // a2 lives in one component of the complement of b union b', so it is
      // strongly causal with both right axes
      const PointPair& b = q1.right_axis();
      const PointPair& b2 = q2.right_axis();
      std::vector<double> angs = {b.lo().angle(), b.hi().angle(), b2.lo().angle(),
                                  b2.hi().angle()};
      std::sort(angs.begin(), angs.end());
      angs.erase(std::unique(angs.begin(), angs.end()), angs.end());
      const size_t pick = rng.index(angs.size());
      const Arc comp(CirclePoint{angs[pick]},
                     CirclePoint{angs[(pick + 1) % angs.size()]});
      const CirclePoint w1 = rng.angle_in(comp);
      CirclePoint w2 = rng.angle_in(comp);
      while (w2.approx_eq(w1, 1e-6)) w2 = rng.angle_in(comp);
      const ZZPath closed = make_closed_path(m, q1, q2, PointPair(w1, w2));
      const ClosedPathReport rep = closed_path_check(m, closed);
      row.text = std::to_string(closed.sides()) + "," + format_g17(closed.length()) +
                 "," + format_g17(rep.min_slack) + "," + std::to_string(rep.worst_side);
      row.json = {{"path", i},
                  {"sides", closed.sides()},
                  {"total_length", closed.length()},
                  {"min_slack", rep.min_slack},
                  {"worst_side", rep.worst_side}};
    } catch (const std::exception& e) {
      row.ok = false;
      row.json = {{"path", i}, {"error", std::string(e.what())}};
    }
  });
  if (c.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["header"] = header_json(c);
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : rows) arr.push_back(std::move(r.json));
    j["rows"] = std::move(arr);
    return j.dump(1) + "\n";
  }
  std::string out =
      csv_header(c, {}, "path,status,sides,total_length,min_slack,worst_side");
  for (size_t i = 0; i < rows.size(); ++i)
    out += std::to_string(i) + "," + (rows[i].ok ? "ok," + rows[i].text : "error,,,,") +
           "\n";
  return out;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::CheckAxioms: return "check-axioms";
    case Command::VerifyGeodesic: return "verify-geodesic";
    case Command::ContractionSweep: return "contraction-sweep";
    case Command::DeltaEstimate: return "delta-estimate";
    case Command::ClosedPaths: return "closed-paths";
  }
  return "?";
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_experiment(const ExperimentConfig& config) {
  if (config.n < 1 && (config.command == Command::CheckAxioms ||
                       config.command == Command::ContractionSweep ||
                       config.command == Command::ClosedPaths))
    throw std::invalid_argument("empty sample budget");
  if (config.pairs < 1 && (config.command == Command::VerifyGeodesic ||
                           config.command == Command::DeltaEstimate))
    throw std::invalid_argument("empty sample budget");
  if (config.budget < 1 && (config.command == Command::VerifyGeodesic ||
                            config.command == Command::DeltaEstimate))
    throw std::invalid_argument("empty path-evaluation budget");
  const MoebiusStructure m(config.structure);
  switch (config.command) {
    case Command::CheckAxioms: return render_check_axioms(config, m);
    case Command::VerifyGeodesic: return render_verify_geodesic(config, m);
    case Command::ContractionSweep: return render_contraction(config, m);
    case Command::DeltaEstimate: return render_delta(config, m);
    case Command::ClosedPaths: return render_closed_paths(config, m);
  }
  throw std::invalid_argument("unknown command");
}

int run_experiment(const ExperimentConfig& config) {
  const std::string artifact = render_experiment(config);
  if (config.out.empty()) {
    std::cout << artifact;
    return 0;
  }
  std::ofstream f(config.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + config.out);
  f << artifact;
  return f.good() ? 0 : 1;
}

}  // namespace harmonia
