#include "dnls/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnls/littlewood_paley.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

Field bona_smith(const Field& f, double eta, double s) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("bona_smith: eta must lie in (0,1]");
  }
  if (!(s >= 1.0)) throw std::invalid_argument("bona_smith: s must be >= 1");
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  std::vector<Complex> out(fh.values().begin(), fh.values().end());
  for (int m = 0; m < g.n; ++m) {
    out[m] *= std::exp(-eta * std::pow(std::abs(g.freqs[m]), s));
  }
  Field r(fh.grid_ptr(), std::move(out), Representation::Spectral);
  return (f.representation() == Representation::Physical) ? to_physical(r) : r;
}

LinearFit bona_smith_rate(const Field& f, double s, double j,
                          std::span<const double> etas) {
  if (etas.size() < 4) {
    throw std::invalid_argument("bona_smith_rate: need at least 4 eta values");
  }
  const auto [lo, hi] = std::minmax_element(etas.begin(), etas.end());
  if (!(*lo > 0.0) || *hi / *lo < 99.0) {
    throw std::invalid_argument("bona_smith_rate: etas must span >= 2 decades");
  }
  if (!(j > 0.0)) throw std::invalid_argument("bona_smith_rate: j must be positive");
  std::vector<double> norms;
  norms.reserve(etas.size());
  for (const double eta : etas) {
    norms.push_back(sobolev_norm(bona_smith(f, eta, s), s + j));
  }
  return fit_loglog(etas, norms);
}

double Envelope::tail_l2(int k) const {
  double acc = 0.0;
  for (int l = std::max(k, 0); l < shells(); ++l) acc += c[l] * c[l];
  return std::sqrt(acc);
}

Envelope build_envelope(const Field& phi, double s, double delta, double R) {
  const double hs = sobolev_norm(phi, s);
  if (!(R > 0.0) || hs > R * (1.0 + 1e-12)) {
    throw std::invalid_argument("build_envelope: requires ||phi||_{H^s} <= R");
  }
  if (!(delta > 0.0) || delta >= std::min(0.01, 0.5 * s)) {
    throw std::invalid_argument(
        "build_envelope: requires 0 < delta < min(1/100, s/2)");
  }
  const int K = max_shell(phi.grid());
  std::vector<double> a(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    a[k] = sobolev_norm(project(phi, ProjectorSelector::band(k)), s) / R;
  }
  Envelope env;
  env.s = s;
  env.delta = delta;
  env.R = R;
  env.c.resize(a.size());
  for (int k = 0; k <= K; ++k) {
    double best = 0.0;
    for (int j = 0; j <= K; ++j) {
      best = std::max(best, std::exp2(-delta * std::abs(j - k)) * a[j]);
    }
    env.c[k] = best;
  }
  return env;
}

nlohmann::json envelope_to_json(const Envelope& env) {
  nlohmann::json shells = nlohmann::json::array();
  for (int k = 0; k < env.shells(); ++k) {
    shells.push_back({{"k", k}, {"c", env.c[k]}});
  }
  return {{"s", env.s}, {"delta", env.delta}, {"R", env.R}, {"shells", shells}};
}

Envelope envelope_from_json(const nlohmann::json& j) {
  Envelope env;
  env.s = j.at("s").get<double>();
  env.delta = j.at("delta").get<double>();
  env.R = j.at("R").get<double>();
  for (const auto& sh : j.at("shells")) {
    env.c.push_back(sh.at("c").get<double>());
  }
  return env;
}

double st_norm(const Trajectory& traj_shell) {
  if (traj_shell.size() == 0) return 0.0;
  double sup_l2 = 0.0;
  double integral = 0.0;
  double prev4 = 0.0;
  for (int i = 0; i < traj_shell.size(); ++i) {
    sup_l2 = std::max(sup_l2, l2_norm(traj_shell.at(i)));
    const double a = linf_norm(traj_shell.at(i));
    const double a4 = a * a * a * a;
    if (i > 0) {
      integral += 0.5 * (prev4 + a4) * (traj_shell.times[i] - traj_shell.times[i - 1]);
    }
    prev4 = a4;
  }
  return sup_l2 + std::pow(integral, 0.25);
}

namespace {

Trajectory project_trajectory(const Trajectory& traj, const ProjectorSelector& sel) {
  Trajectory out;
  out.grid = traj.grid;
  out.times = traj.times;
  out.fields.reserve(traj.fields.size());
  for (int i = 0; i < traj.size(); ++i) out.fields.push_back(project(traj.at(i), sel));
  out.diagnostics.resize(traj.fields.size());
  return out;
}

}  // namespace

EnvelopeDiagnostic envelope_diagnostic(const Trajectory& traj_v, const Envelope& env,
                                       double s) {
  if (traj_v.size() == 0) {
    throw std::invalid_argument("envelope_diagnostic: empty trajectory");
  }
  EnvelopeDiagnostic diag;
  diag.per_shell.resize(env.c.size(), 0.0);
  for (int k = 0; k < env.shells(); ++k) {
    const double st = st_norm(project_trajectory(traj_v, ProjectorSelector::band(k)));
    if (env.c[k] > 0.0) {
      diag.per_shell[k] = std::exp2(s * k) / env.c[k] * st;
      diag.m = std::max(diag.m, diag.per_shell[k]);
    } else if (st > 0.0) {
      diag.flagged_shells.push_back(k);
    }
  }
  return diag;
}

TailBound tail_bound_check(const Trajectory& traj_v, const Envelope& env, double s,
                           int k) {
  if (traj_v.size() == 0) {
    throw std::invalid_argument("tail_bound_check: empty trajectory");
  }
  TailBound tb;
  tb.tail_env = env.tail_l2(k);

  // L_T^inf H^s of the tail plus discrete L_T^4 of the Linf norm of its
  // spectral derivative
  const auto geq = ProjectorSelector::geq(k);
  double sup_hs = 0.0;
  double integral = 0.0;
  double prev4 = 0.0;
  for (int i = 0; i < traj_v.size(); ++i) {
    const Field tail = project(traj_v.at(i), geq);
    sup_hs = std::max(sup_hs, sobolev_norm(tail, s));
    const double a = linf_norm(derivative(tail));
    const double a4 = a * a * a * a;
    if (i > 0) integral += 0.5 * (prev4 + a4) * (traj_v.times[i] - traj_v.times[i - 1]);
    prev4 = a4;
  }
  tb.lhs = sup_hs + std::pow(integral, 0.25);

  if (tb.tail_env == 0.0) {
    tb.violation = tb.lhs > 0.0;
    tb.ratio = 0.0;
  } else {
    tb.ratio = tb.lhs / tb.tail_env;
  }
  return tb;
}

}  // namespace dnls
