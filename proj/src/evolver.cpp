#include "dnls/evolver.hpp"

#include <algorithm>
#include <cmath>

#include "dnls/semigroup.hpp"

namespace dnls {

namespace {

constexpr double kBlowupFactor = 1e6;

// dx(lambda u^2 + mu |u|^2) with optional 2/3-rule alias control on the
// quadratic products.
Field derivative_nonlinearity(const Field& u, const Coefficients& c, bool dealias) {
  const Field uf = dealias ? dealias_two_thirds(as_physical(u)) : as_physical(u);
  std::vector<Complex> q(static_cast<size_t>(uf.size()));
  for (int i = 0; i < uf.size(); ++i) {
    const Complex v = uf[i];
    q[i] = c.lambda * v * v + c.mu * std::norm(v);
  }
  Field quad(uf.grid_ptr(), std::move(q), Representation::Physical);
  if (dealias) quad = dealias_two_thirds(quad);
  return derivative(quad);
}

struct DiagnosticsInput {
  const Coefficients& c;
  double s;
};

TimeDiagnostics compute_diagnostics(const Field& u, const DiagnosticsInput& in,
                                    int picard_iters) {
  TimeDiagnostics d;
  const double l2 = l2_norm(u);
  d.mass = l2 * l2;
  d.h1_norm = sobolev_norm(u, 1.0);
  d.hs_norm = sobolev_norm(u, in.s);
  d.sup_primitive = linf_norm(primitive(u).antiderivative);
  d.picard_iters = picard_iters;
  // gauged energy is defined through v = e^{-Lambda} u; computable whenever
  // the gauge does not overflow
  try {
    const PhaseResult ph = gauge_phase(u, in.c);
    const Field v = apply_gauge(u, ph.phase, GaugeDirection::Forward);
    const double dv = l2_norm(derivative(v));
    const double v4 = l4_norm(v);
    d.gauged_energy = dv * dv + std::norm(in.c.mu) * v4 * v4;
  } catch (const GaugeOverflow&) {
    d.gauged_energy = std::numeric_limits<double>::infinity();
  }
  return d;
}

bool blown_up(const Field& u, double initial_l2) {
  if (!all_finite(u)) return true;
  return l2_norm(u) > kBlowupFactor * (1.0 + initial_l2);
}

void record(Trajectory& traj, double t, const Field& u, const DiagnosticsInput& in,
            int picard_iters) {
  traj.times.push_back(t);
  traj.fields.push_back(u);
  traj.diagnostics.push_back(compute_diagnostics(u, in, picard_iters));
}

int step_count(const SolverConfig& cfg) {
  return static_cast<int>(std::llround(cfg.t_final / cfg.dt));
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(t_final > 0.0) || dt > t_final) {
    throw std::invalid_argument("SolverConfig: need 0 < dt <= t_final");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("SolverConfig: epsilon must lie in [0,1]");
  }
  if (picard_max_iters < 2) {
    throw std::invalid_argument("SolverConfig: picard_max_iters must be >= 2");
  }
  if (!(picard_tol > 0.0)) {
    throw std::invalid_argument("SolverConfig: picard_tol must be positive");
  }
  if (output_stride < 1) {
    throw std::invalid_argument("SolverConfig: output_stride must be >= 1");
  }
}

Field step_regularized(const Field& u, const Coefficients& c, const SolverConfig& cfg,
                       int* picard_iters_out) {
  cfg.validate();
  const PropagatorSpec full{cfg.epsilon, cfg.dt};

  const Field fu = derivative_nonlinearity(u, c, cfg.dealias);
  // A = U(dt) (u - i dt/2 F(u)); implicit part: w = A - i dt/2 F(w)
  const Field a = propagate(as_physical(u) + Complex(0, -0.5 * cfg.dt) * as_physical(fu),
                            full);
  Field w = propagate(as_physical(u), full);
  double residual = 0.0;
  for (int it = 1; it <= cfg.picard_max_iters; ++it) {
    const Field next =
        a + Complex(0, -0.5 * cfg.dt) * as_physical(derivative_nonlinearity(w, c, cfg.dealias));
    residual = l2_norm(next - w);
    w = next;
    if (residual <= cfg.picard_tol * (1.0 + l2_norm(w))) {
      if (picard_iters_out) *picard_iters_out = it;
      return w;
    }
  }
  throw PicardDivergence(residual, cfg.picard_max_iters);
}

Trajectory solve_regularized(const Field& phi, const Coefficients& c,
                             const SolverConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.grid = phi.grid_ptr();
  const DiagnosticsInput din{c, cfg.diagnostic_s};
  const double initial_l2 = l2_norm(phi);

  Field u = as_physical(phi);
  record(traj, 0.0, u, din, 0);
  const int nsteps = step_count(cfg);
  for (int k = 1; k <= nsteps; ++k) {
    int iters = 0;
    try {
      u = step_regularized(u, c, cfg, &iters);
    } catch (const PicardDivergence& e) {
      traj.aborted = true;
      traj.failure_time = k * cfg.dt;
      traj.failure_reason = e.what();
      return traj;
    }
    if (blown_up(u, initial_l2)) {
      traj.blew_up = true;
      traj.aborted = true;
      traj.failure_time = k * cfg.dt;
      traj.failure_reason = "norm overflow";
      return traj;
    }
    if (k % cfg.output_stride == 0 || k == nsteps) {
      record(traj, k * cfg.dt, u, din, iters);
    }
  }
  return traj;
}

namespace {

// Strang substep for the cubic NLS i v_t + v_xx/2 = |mu|^2 |v|^2 v: the
// nonlinear flow is an exact pointwise phase rotation.
Field cubic_phase_rotation(const Field& v, double mu2, double dt) {
  std::vector<Complex> out(v.values().begin(), v.values().end());
  for (auto& z : out) {
    const double ph = -mu2 * std::norm(z) * dt;
    z *= Complex(std::cos(ph), std::sin(ph));
  }
  return Field(v.grid_ptr(), std::move(out), Representation::Physical);
}

}  // namespace

Trajectory solve_gauged(const Field& phi, const Coefficients& c,
                        const SolverConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.grid = phi.grid_ptr();
  const DiagnosticsInput din{c, cfg.diagnostic_s};
  const double initial_l2 = l2_norm(phi);

  const PhaseResult ph0 = gauge_phase(as_physical(phi), c);
  Field v = apply_gauge(as_physical(phi), ph0.phase, GaugeDirection::Forward);
  record(traj, 0.0, as_physical(phi), din, 0);

  const int nsteps = step_count(cfg);
  const bool special = c.special_case();
  const double mu2 = std::norm(c.mu);
  const PropagatorSpec half{0.0, 0.5 * cfg.dt};
  const PropagatorSpec full{0.0, cfg.dt};

  for (int k = 1; k <= nsteps; ++k) {
    int iters = 0;
    try {
      if (special) {
        v = propagate(cubic_phase_rotation(as_physical(propagate(v, half)), mu2, cfg.dt),
                      half);
      } else {
        // general case: i v_t + v_xx/2 = e^{-Lambda} N3_0(u); Lambda and u
        // are refreshed from v once per step, then the step is closed by the
        // same exponential-trapezoid Picard iteration as the regularized
        // solver.
        const InverseGaugeResult inv = invert_gauge(as_physical(v), c);
        const auto rhs = [&](const Field& w) {
          const Field uw = apply_gauge(w, inv.phase, GaugeDirection::Inverse);
          Field n3 = gauged_nonlinearity(uw, c, 0.0);
          if (cfg.dealias) n3 = dealias_two_thirds(n3);
          return apply_gauge(n3, inv.phase, GaugeDirection::Forward);
        };
        const Field f0 = rhs(as_physical(v));
        const Field a =
            propagate(as_physical(v) + Complex(0, -0.5 * cfg.dt) * f0, full);
        Field w = propagate(as_physical(v), full);
        double residual = 0.0;
        bool converged = false;
        for (int it = 1; it <= cfg.picard_max_iters; ++it) {
          const Field next = a + Complex(0, -0.5 * cfg.dt) * rhs(as_physical(w));
          residual = l2_norm(next - w);
          w = next;
          if (residual <= cfg.picard_tol * (1.0 + l2_norm(w))) {
            iters = it;
            converged = true;
            break;
          }
        }
        if (!converged) throw PicardDivergence(residual, cfg.picard_max_iters);
        v = w;
      }

      if (blown_up(v, initial_l2)) {
        traj.blew_up = true;
        traj.aborted = true;
        traj.failure_time = k * cfg.dt;
        traj.failure_reason = "norm overflow in gauged variable";
        return traj;
      }
      if (k % cfg.output_stride == 0 || k == nsteps) {
        const InverseGaugeResult inv = invert_gauge(as_physical(v), c);
        record(traj, k * cfg.dt, inv.u, din, iters);
      }
    } catch (const GaugeOverflow& e) {
      traj.aborted = true;
      traj.failure_time = k * cfg.dt;
      traj.failure_reason = e.what();
      return traj;
    } catch (const PicardDivergence& e) {
      traj.aborted = true;
      traj.failure_time = k * cfg.dt;
      traj.failure_reason = e.what();
      return traj;
    }
  }
  return traj;
}

Trajectory solve_direct(const Field& phi, const Coefficients& c,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (cfg.epsilon != 0.0) {
    throw std::invalid_argument("solve_direct: epsilon must be 0");
  }
  Trajectory traj;
  traj.grid = phi.grid_ptr();
  const DiagnosticsInput din{c, cfg.diagnostic_s};
  const double initial_l2 = l2_norm(phi);

  Field u = as_physical(phi);
  record(traj, 0.0, u, din, 0);
  const PropagatorSpec half{0.0, 0.5 * cfg.dt};

  // Strang: half free flight, RK4 on u_t = -i dx(lambda u^2 + mu|u|^2)
  // (dealiasing always on), half free flight. This scheme is expected to be
  // able to fail on rough/large data; blow-up is a recorded outcome.
  const auto nonlin = [&](const Field& w) {
    return Complex(0, -1) * as_physical(derivative_nonlinearity(w, c, true));
  };
  const int nsteps = step_count(cfg);
  for (int k = 1; k <= nsteps; ++k) {
    u = as_physical(propagate(u, half));
    const Field k1 = nonlin(u);
    const Field k2 = nonlin(u + Complex(0.5 * cfg.dt, 0) * k1);
    const Field k3 = nonlin(u + Complex(0.5 * cfg.dt, 0) * k2);
    const Field k4 = nonlin(u + Complex(cfg.dt, 0) * k3);
    u = u + Complex(cfg.dt / 6.0, 0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    u = as_physical(propagate(u, half));

    if (blown_up(u, initial_l2)) {
      traj.blew_up = true;
      traj.failure_time = k * cfg.dt;
      traj.failure_reason = "norm overflow (direct scheme)";
      return traj;
    }
    if (k % cfg.output_stride == 0 || k == nsteps) {
      record(traj, k * cfg.dt, u, din, 0);
    }
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& traj, const Coefficients& c) {
  if (!c.special_case()) {
    throw std::invalid_argument(
        "conservation_report: conservation laws require 2*lambda + conj(mu) = 0");
  }
  if (traj.size() == 0) throw std::invalid_argument("conservation_report: empty trajectory");
  ConservationReport rep;
  const double mu2 = std::norm(c.mu);
  for (int i = 0; i < traj.size(); ++i) {
    const Field& u = traj.at(i);
    const double l2 = l2_norm(u);
    const PhaseResult ph = gauge_phase(u, c);
    const Field v = apply_gauge(u, ph.phase, GaugeDirection::Forward);
    const double dv = l2_norm(derivative(v));
    const double v4 = l4_norm(v);
    rep.times.push_back(traj.times[i]);
    rep.mass.push_back(l2 * l2);
    rep.gauged_energy.push_back(dv * dv + mu2 * v4 * v4);
  }
  const double m0 = rep.mass.front();
  const double e0 = rep.gauged_energy.front();
  for (size_t i = 0; i < rep.mass.size(); ++i) {
    if (m0 > 0.0) {
      rep.max_mass_drift = std::max(rep.max_mass_drift, std::abs(rep.mass[i] / m0 - 1.0));
    }
    if (e0 > 0.0) {
      rep.max_energy_drift =
          std::max(rep.max_energy_drift, std::abs(rep.gauged_energy[i] / e0 - 1.0));
    }
  }
  return rep;
}

GronwallReport l2_difference_check(const Trajectory& a, const Trajectory& b,
                                   const Coefficients& c) {
  if (!c.special_case()) {
    throw std::invalid_argument("l2_difference_check: special case required");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2_difference_check: misaligned trajectories");
  }
  for (int i = 0; i < a.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) {
      throw std::invalid_argument("l2_difference_check: misaligned time grids");
    }
  }
  GronwallReport rep;
  std::vector<double> grad_sum(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) {
    grad_sum[i] = linf_norm(derivative(a.at(i))) + linf_norm(derivative(b.at(i)));
    const double d = l2_norm(a.at(i) - b.at(i));
    rep.times.push_back(a.times[i]);
    rep.lhs.push_back(d * d);
  }
  rep.exponent_integral.assign(rep.times.size(), 0.0);
  for (size_t i = 1; i < rep.times.size(); ++i) {
    rep.exponent_integral[i] =
        rep.exponent_integral[i - 1] +
        0.5 * (grad_sum[i - 1] + grad_sum[i]) * (rep.times[i] - rep.times[i - 1]);
  }
  const double lhs0 = rep.lhs.front();
  for (size_t i = 1; i < rep.lhs.size(); ++i) {
    if (lhs0 > 0.0 && rep.lhs[i] > lhs0 && rep.exponent_integral[i] > 0.0) {
      rep.c_min = std::max(rep.c_min,
                           std::log(rep.lhs[i] / lhs0) / rep.exponent_integral[i]);
    }
  }
  return rep;
}

Trajectory gauge_transform_trajectory(const Trajectory& traj, const Coefficients& c) {
  Trajectory out;
  out.grid = traj.grid;
  out.times = traj.times;
  out.diagnostics = traj.diagnostics;
  out.aborted = traj.aborted;
  out.blew_up = traj.blew_up;
  out.failure_time = traj.failure_time;
  out.failure_reason = traj.failure_reason;
  out.fields.reserve(traj.fields.size());
  for (int i = 0; i < traj.size(); ++i) {
    const PhaseResult ph = gauge_phase(traj.at(i), c);
    out.fields.push_back(apply_gauge(traj.at(i), ph.phase, GaugeDirection::Forward));
  }
  return out;
}

Trajectory Trajectory::prefix(double t_max) const {
  Trajectory out;
  out.grid = grid;
  for (int i = 0; i < size(); ++i) {
    if (times[i] <= t_max + 1e-12) {
      out.times.push_back(times[i]);
      out.fields.push_back(fields[i]);
      out.diagnostics.push_back(diagnostics[i]);
    }
  }
  return out;
}

}  // namespace dnls
