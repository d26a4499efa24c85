// Batch experiment runner behind the CLI: axiom sweeps, geodesic verification,
// contraction sweeps, delta estimation and closed-path checks, with
// reproducible seeding and CSV/JSON emission.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "harmonia/axioms.hpp"
#include "harmonia/semimetric.hpp"

namespace harmonia {

enum class Command {
  CheckAxioms,
  VerifyGeodesic,
  ContractionSweep,
  DeltaEstimate,
  ClosedPaths,
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  Command command = Command::CheckAxioms;
  SemiMetricSpec structure = SemiMetricSpec::canonical();
  long long n = 1000;        // samples (check-axioms, contraction, closed-paths)
  long long pairs = 100;     // pairs (verify-geodesic, delta-estimate)
  long long budget = 10000;  // path evaluations per pair
  std::uint64_t seed = 0;
  std::string out;           // output file; empty writes to stdout
  OutputFormat format = OutputFormat::Csv;
  ExecPolicy policy = {};
};

const char* command_name(Command c);

// Renders the full artifact for the config. Pure function of the config.
std::string render_experiment(const ExperimentConfig& config);

// Renders and writes to config.out (or stdout). Returns the process exit
// status; malformed configs throw std::invalid_argument.
int run_experiment(const ExperimentConfig& config);

// 17-significant-digit float formatting used in all CSV output.
std::string format_g17(double v);

}  // namespace harmonia
