#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dnls/evolver.hpp"
#include "dnls/initial_data.hpp"
#include "dnls/io.hpp"

namespace dnls {

struct GridConfig {
  int n = 512;
  double length = 80.0;
  double x_left = -40.0;
};

struct InitialDataConfig {
  // gaussian | soliton | tone_sum | random | rate_profile
  std::string recipe = "gaussian";
  double amplitude_re = 0.5;
  double amplitude_im = 0.0;
  double sigma = 2.0;
  double center = 0.0;
  double width = 1.0;
  double velocity = 0.0;
  std::vector<std::array<double, 3>> tones;  // {re, im, freq}
  double decay = 4.0;
  double l2_target = 1.0;
  // rate_profile: |fhat|^2 = |eta|^{2j-1} / (1+eta^2)^{s+j}, the scale-critical
  // full-band spectrum that saturates the mollifier growth rate
  double profile_s = 1.0;
  double profile_j = 1.0;
};

struct ExperimentConfig {
  std::string kind = "conservation";
  GridConfig grid;
  SolverConfig solver;
  Coefficients coeffs{Complex(0.0, 0.5), Complex(0.0, 1.0)};
  InitialDataConfig initial_data;

  std::vector<double> epsilons;
  std::vector<double> etas;
  std::vector<double> perturbations;

  double s = 2.0;           // norm index for difference/envelope measurements
  double delta = 0.005;     // envelope slow-variation exponent
  double envelope_R = 0.0;  // 0 means "use ||phi||_{H^s}"
  double bona_smith_j = 1.0;
  int ensemble_size = 100;       // strichartz ensemble
  int time_samples = 64;         // strichartz discrete time resolution
  double agreement_tol = 5e-3;   // direct-vs-gauged divergence threshold
  double mass_drift_tol = 1e-6;
  double energy_drift_tol = 1e-4;
  std::string pipeline = "auto";  // solve: regularized | gauged | direct | auto

  uint64_t seed = 1;
  std::string output_dir = "out";
  std::string format = "csv";  // csv | json
  bool quiet = false;

  /// Parses a config with schema validation; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// Full echo including every defaulted field.
  nlohmann::json to_json() const;

  Field make_initial_data(GridPtr g, Rng& rng) const;
};

struct Report {
  std::string kind;
  nlohmann::json config;
  nlohmann::json data;
  std::vector<CsvTable> tables;
  bool passed = true;
  std::vector<std::string> failures;
  double wall_seconds = 0.0;  // console only; never serialized

  void fail(const std::string& why);
  nlohmann::json to_json() const;
};

/// Writes <kind>.json / <kind>.csv (plus one file per extra table) under
/// out_dir, creating it if needed. Returns the paths written.
std::vector<std::string> write_report(const Report& rep, const std::string& out_dir,
                                      const std::string& format);

Report run_eps_convergence(const ExperimentConfig& cfg);
Report run_joint_limit(const ExperimentConfig& cfg);
Report run_lipschitz_flow(const ExperimentConfig& cfg);
Report run_conservation(const ExperimentConfig& cfg);
Report run_bona_smith(const ExperimentConfig& cfg);
Report run_envelope(const ExperimentConfig& cfg);
Report run_strichartz(const ExperimentConfig& cfg);
Report run_direct_vs_gauged(const ExperimentConfig& cfg);
Report run_solve(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
Report run_experiment(const ExperimentConfig& cfg);

/// Worker cap: min(jobs, GAUGE_DNLS_THREADS or hardware concurrency).
int worker_count(int jobs);

/// Index-parallel map; results must be written into preallocated slots so
/// the outcome is independent of scheduling order.
void parallel_for(int jobs, const std::function<void(int)>& fn);

}  // namespace dnls
