// harmonia: batch experiments over Moebius structures on the circle.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "harmonia/experiment.hpp"

namespace {

harmonia::SemiMetricSpec parse_structure(const std::string& inline_kind,
                                         const std::string& file, double epsilon) {
  using harmonia::SemiMetricSpec;
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw std::invalid_argument("cannot read structure file: " + file);
    nlohmann::json j;
    f >> j;
    return SemiMetricSpec::from_json(j);
  }
  if (inline_kind == "canonical" || inline_kind == "canonical-chordal")
    return SemiMetricSpec::canonical();
  if (inline_kind == "sine-perturbed") return SemiMetricSpec::sine_perturbed(epsilon);
  if (inline_kind == "power-perturbed")
    return SemiMetricSpec::power_perturbed(epsilon);
  if (inline_kind == "tabulated")
    throw std::invalid_argument("tabulated structures require --structure-file");
  throw std::invalid_argument("unknown structure kind: " + inline_kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "harmonia - numerical experiments on Moebius structures over the circle.\n"
      "Structure spec JSON: {\"kind\": \"canonical-chordal\" | \"sine-perturbed\" |\n"
      "\"power-perturbed\" | \"tabulated\", \"epsilon\"?: number,\n"
      "\"table\"?: {\"resolution\": n, \"values\": [n*n doubles]}}"};
  app.require_subcommand(1);

  struct CommonOpts {
    std::string structure = "canonical";
    std::string structure_file;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
  };

  auto add_common = [&](CLI::App* sub, CommonOpts& o, const char* default_format) {
    sub->add_option("--structure", o.structure,
                    "inline structure kind (canonical, sine-perturbed, "
                    "power-perturbed)")
        ->capture_default_str();
    sub->add_option("--structure-file", o.structure_file,
                    "JSON file with the structure spec");
    sub->add_option("--epsilon", o.epsilon,
                    "perturbation strength for inline perturbed kinds");
    sub->add_option("--seed", o.seed, "master RNG seed")->capture_default_str();
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--format", o.format,
                    std::string("csv or json (default: ") + default_format + ")")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CommonOpts ax_o, geo_o, con_o, del_o, clo_o;
  long long ax_n = 1000, con_n = 10000, clo_n = 1000;
  long long geo_pairs = 100, del_pairs = 100;
  long long geo_budget = 10000, del_budget = 10000;

  auto* ax = app.add_subcommand(
      "check-axioms",
      "Monotonicity, nonzero-triple, ptolemaic and increment sweeps.\n"
      "CSV columns: axiom,sample,status,slack (margins in the header).");
  ax->add_option("--n", ax_n, "samples per checker")->capture_default_str();
  add_common(ax, ax_o, "json");

  auto* geo = app.add_subcommand(
      "verify-geodesic",
      "Shortest discovered zig-zag path vs segment length per random pair.\n"
      "CSV columns: pair,status,axis_lo,axis_hi,segment_length,min_found,"
      "margin,paths,best_sides");
  geo->add_option("--pairs", geo_pairs, "random collinear pairs")->capture_default_str();
  geo->add_option("--budget", geo_budget, "path evaluations per pair")
      ->capture_default_str();
  add_common(geo, geo_o, "csv");

  auto* con = app.add_subcommand(
      "contraction-sweep",
      "Midpoint-projection contraction ratios.\n"
      "CSV columns: sample,status,before,after,ratio,slack");
  con->add_option("--n", con_n, "sampled configurations")->capture_default_str();
  add_common(con, con_o, "csv");

  auto* del = app.add_subcommand(
      "delta-estimate",
      "Zig-zag distance upper bounds for random pairs.\n"
      "CSV columns: pair,status,upper,witness_sides,budget_consumed");
  del->add_option("--pairs", del_pairs, "random pairs")->capture_default_str();
  del->add_option("--budget", del_budget, "path evaluations per pair")
      ->capture_default_str();
  add_common(del, del_o, "csv");

  auto* clo = app.add_subcommand(
      "closed-paths",
      "Closed zig-zag paths: per-side slack of the closed-path inequality.\n"
      "CSV columns: path,status,sides,total_length,min_slack,worst_side");
  clo->add_option("--n", clo_n, "constructed closed paths")->capture_default_str();
  add_common(clo, clo_o, "csv");

  CLI11_PARSE(app, argc, argv);

  if (const char* threads = std::getenv("HARMONIA_THREADS"))
    harmonia::set_thread_cap(std::atoi(threads));

  try {
    harmonia::ExperimentConfig cfg;
    CommonOpts* o = nullptr;
    const char* default_format = "csv";
    if (ax->parsed()) {
      cfg.command = harmonia::Command::CheckAxioms;
      cfg.n = ax_n;
      o = &ax_o;
      default_format = "json";
    } else if (geo->parsed()) {
      cfg.command = harmonia::Command::VerifyGeodesic;
      cfg.pairs = geo_pairs;
      cfg.budget = geo_budget;
      o = &geo_o;
    } else if (con->parsed()) {
      cfg.command = harmonia::Command::ContractionSweep;
      cfg.n = con_n;
      o = &con_o;
    } else if (del->parsed()) {
      cfg.command = harmonia::Command::DeltaEstimate;
      cfg.pairs = del_pairs;
      cfg.budget = del_budget;
      o = &del_o;
    } else {
      cfg.command = harmonia::Command::ClosedPaths;
      cfg.n = clo_n;
      o = &clo_o;
    }
    cfg.structure = parse_structure(o->structure, o->structure_file, o->epsilon);
    cfg.seed = o->seed;
    cfg.out = o->out;
    const std::string fmt = o->format.empty() ? default_format : o->format;
    cfg.format = fmt == "json" ? harmonia::OutputFormat::Json
                               : harmonia::OutputFormat::Csv;
    return harmonia::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
