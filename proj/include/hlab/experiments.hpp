#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hlab/report.hpp"

namespace hlab {

/// Half-open interval of chain sites, written a:b on the command line.
struct SiteRange {
  int a = 0;
  int b = 0;
  Region region() const { return Region::range(a, b - 1); }
};

SiteRange parse_site_range(const std::string& text, const std::string& flag);

struct ExperimentConfig {
  std::string model;
  int L = 0;
  Couplings couplings;
  std::optional<SiteRange> x;
  std::vector<double> ells;
  double mu = 1.0;
  /// F(r) = (1 + r)^{-(nu + 1)}
  int f_nu = 1;
  int quad_nodes = 64;
  std::vector<double> times;
  std::vector<int> sites;              // lr: support of A and B
  std::optional<SiteRange> inner;      // lr: truncation volume
  std::vector<int> cuts;
  int chain = 0;                       // geometry: chain length
  double r = 1.0;                      // geometry: boundary width
  std::optional<double> c1;            // entropy bound constants
  double c2 = 0.5;
  std::vector<double> g_values;        // sweep
  std::vector<int> l_values;           // sweep
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out = ".";

  /// Keys mirror the long flag names. Unknown keys raise ConfigInvalid naming the key.
  static ExperimentConfig from_json(const Json& j);
};

struct Outcome {
  Json report;
  std::vector<std::pair<std::string, CsvTable>> tables;
  bool passed = true;
};

/// Each runner validates the fields it needs and throws ConfigInvalid naming the flag.
Outcome run_geometry(const ExperimentConfig& cfg);
Outcome run_lr(const ExperimentConfig& cfg);
Outcome run_factorize(const ExperimentConfig& cfg);
Outcome run_entropy(const ExperimentConfig& cfg);
Outcome run_arealaw(const ExperimentConfig& cfg);
Outcome run_sweep(const ExperimentConfig& cfg);

struct FactorizeRun {
  SpectralData<double> spectrum;
  std::vector<FactorizationResult<double>> results;  // one per ell
  Outcome outcome;
};

/// The factorize subcommand with the pipeline results kept.
FactorizeRun factorize_run(const ExperimentConfig& cfg);

/// Writes report.json and the tables into cfg.out.
void write_outcome(const Outcome& outcome, const std::string& dir);

using Runner = std::function<Outcome(const ExperimentConfig&)>;

/// Runs one subcommand and writes its outputs. Returns the process exit status: 0 when every
/// asserted inequality held, 1 on configuration errors, 2 when an inequality failed.
int run_and_report(const std::string& name, const Runner& run, const ExperimentConfig& cfg, std::ostream& out,
                   std::ostream& err);

/// Boundary-growth inequalities and set-builder comparisons for one region.
CheckList geometry_checks(const Lattice& lat, const Region& x, double range, const std::vector<Region>& supports,
                          int max_n);

}  // namespace hlab
