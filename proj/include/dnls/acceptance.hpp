#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dnls {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  uint64_t seed = 1;
  std::string out_dir = "out/gate";
  bool quiet = false;  // suppresses per-criterion console lines
};

struct AcceptanceSummary {
  std::vector<CriterionResult> results;
  bool all_passed = true;
};

/// Runs the full acceptance suite; prints one pass/fail line per criterion
/// unless quiet. Report artifacts land under opts.out_dir.
AcceptanceSummary run_acceptance(const AcceptanceOptions& opts);

}  // namespace dnls
