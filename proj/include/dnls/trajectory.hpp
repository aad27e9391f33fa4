#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// Per-time diagnostics recorded alongside each stored field.
struct TimeDiagnostics {
  double mass = 0.0;            // ||u||_L2^2
  double gauged_energy = 0.0;   // ||dx v||_L2^2 + |mu|^2 ||v||_L4^4, v = e^{-Lambda} u
  double h1_norm = 0.0;
  double hs_norm = 0.0;
  double sup_primitive = 0.0;
  int picard_iters = 0;
};

/// Time-stamped sequence of fields with diagnostics. Times are strictly
/// increasing and start at 0; all fields live on one grid. A trajectory may
/// end early: `aborted` records solver failure, `blew_up` a detected
/// blow-up (the direct solver treats the latter as a result, not an error).
struct Trajectory {
  GridPtr grid;
  std::vector<double> times;
  std::vector<Field> fields;
  std::vector<TimeDiagnostics> diagnostics;

  bool aborted = false;
  bool blew_up = false;
  double failure_time = 0.0;
  std::string failure_reason;

  int size() const { return static_cast<int>(times.size()); }
  const Field& at(int i) const { return fields[static_cast<size_t>(i)]; }
  double final_time() const { return times.empty() ? 0.0 : times.back(); }
  const Field& final_field() const { return fields.back(); }

  /// Prefix containing samples with t <= t_max (used for M(T) sweeps).
  Trajectory prefix(double t_max) const;
};

}  // namespace dnls
