#include "dnls/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnls {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& vals) {
  std::vector<std::string> row;
  row.reserve(vals.size());
  for (const double v : vals) row.push_back(format_double(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable trajectory_to_csv(const Trajectory& traj) {
  CsvTable t;
  t.name = "trajectory";
  t.columns = {"t",       "mass",          "gauged_energy", "h1_norm",
               "hs_norm", "sup_primitive", "picard_iters"};
  for (int i = 0; i < traj.size(); ++i) {
    const auto& d = traj.diagnostics[i];
    t.add_row({traj.times[i], d.mass, d.gauged_energy, d.h1_norm, d.hs_norm,
               d.sup_primitive, static_cast<double>(d.picard_iters)});
  }
  return t;
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
  nlohmann::json j;
  j["grid"] = {{"n", traj.grid->n},
               {"length", traj.grid->length},
               {"x_left", traj.grid->x_left}};
  j["aborted"] = traj.aborted;
  j["blew_up"] = traj.blew_up;
  if (traj.aborted || traj.blew_up) {
    j["failure_time"] = traj.failure_time;
    j["failure_reason"] = traj.failure_reason;
  }
  nlohmann::json samples = nlohmann::json::array();
  for (int i = 0; i < traj.size(); ++i) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (const auto& v : traj.at(i).values()) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    const auto& d = traj.diagnostics[i];
    samples.push_back({{"t", traj.times[i]},
                       {"re", std::move(re)},
                       {"im", std::move(im)},
                       {"diagnostics",
                        {{"mass", d.mass},
                         {"gauged_energy", d.gauged_energy},
                         {"h1_norm", d.h1_norm},
                         {"hs_norm", d.hs_norm},
                         {"sup_primitive", d.sup_primitive},
                         {"picard_iters", d.picard_iters}}}});
  }
  j["samples"] = std::move(samples);
  return j;
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
  Trajectory traj;
  const auto& gj = j.at("grid");
  traj.grid = make_grid(gj.at("n").get<int>(), gj.at("length").get<double>(),
                        gj.at("x_left").get<double>());
  traj.aborted = j.value("aborted", false);
  traj.blew_up = j.value("blew_up", false);
  traj.failure_time = j.value("failure_time", 0.0);
  traj.failure_reason = j.value("failure_reason", std::string());
  for (const auto& s : j.at("samples")) {
    traj.times.push_back(s.at("t").get<double>());
    const auto& re = s.at("re");
    const auto& im = s.at("im");
    std::vector<Complex> vals(re.size());
    for (size_t i = 0; i < vals.size(); ++i) {
      vals[i] = Complex(re[i].get<double>(), im[i].get<double>());
    }
    traj.fields.emplace_back(traj.grid, std::move(vals), Representation::Physical);
    TimeDiagnostics d;
    const auto& dj = s.at("diagnostics");
    d.mass = dj.at("mass").get<double>();
    d.gauged_energy = dj.at("gauged_energy").get<double>();
    d.h1_norm = dj.at("h1_norm").get<double>();
    d.hs_norm = dj.at("hs_norm").get<double>();
    d.sup_primitive = dj.at("sup_primitive").get<double>();
    d.picard_iters = dj.at("picard_iters").get<int>();
    traj.diagnostics.push_back(d);
  }
  return traj;
}

}  // namespace dnls
