#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "dnls/trajectory.hpp"

namespace dnls {

/// Shortest round-trip decimal form of a double (deterministic; parses back
/// to the identical bits).
std::string format_double(double v);

struct CsvTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& vals);
  std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Per-time diagnostics table with the export schema
/// t, mass, gauged_energy, h1_norm, hs_norm, sup_primitive, picard_iters.
CsvTable trajectory_to_csv(const Trajectory& traj);

/// Raw field dump with grid metadata; round-trips bit exactly.
nlohmann::json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const nlohmann::json& j);

}  // namespace dnls
