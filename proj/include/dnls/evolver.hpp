#pragma once

#include <stdexcept>
#include <vector>

#include "dnls/gauge.hpp"
#include "dnls/trajectory.hpp"

namespace dnls {

enum class Scheme { ExponentialPicard, StrangSplit };

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  double epsilon = 0.0;
  Scheme scheme = Scheme::ExponentialPicard;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;
  bool dealias = true;
  int output_stride = 1;
  double diagnostic_s = 2.0;  // the s of the hs_norm diagnostic column

  void validate() const;
};

struct PicardDivergence : std::runtime_error {
  PicardDivergence(double residual, int iters)
      : std::runtime_error("Picard iteration did not converge: residual " +
                           std::to_string(residual) + " after " +
                           std::to_string(iters) + " iterations"),
        last_residual(residual),
        iterations(iters) {}
  double last_residual;
  int iterations;
};

/// One step of the exponential integrator for the regularized equation in
/// mild form: the Duhamel integral of U_eps(dt - tau) dx(lambda u^2 + mu|u|^2)
/// is closed with the trapezoid rule and the implicit endpoint is resolved by
/// Picard iteration (the discrete analogue of the contraction map).
/// Returns the advanced field; picard_iters_out (optional) receives the
/// iteration count.
Field step_regularized(const Field& u, const Coefficients& c, const SolverConfig& cfg,
                       int* picard_iters_out = nullptr);

/// Time integration of the regularized equation from data phi. On step
/// failure the partial trajectory is returned with `aborted` set.
Trajectory solve_regularized(const Field& phi, const Coefficients& c,
                             const SolverConfig& cfg);

/// Gauged pipeline: v0 = e^{-Lambda(0)} phi; evolve v (Strang-split cubic NLS
/// in the special case, exponential-Picard with per-step refreshed gauge in
/// the general case); recover u = invert_gauge(v) at output times.
Trajectory solve_gauged(const Field& phi, const Coefficients& c,
                        const SolverConfig& cfg);

/// Naive pseudo-spectral split-step on the derivative equation itself.
/// Requires epsilon == 0; dealiasing is forced on. Blow-up is recorded in
/// the trajectory, not thrown.
Trajectory solve_direct(const Field& phi, const Coefficients& c,
                        const SolverConfig& cfg);

struct ConservationReport {
  std::vector<double> times;
  std::vector<double> mass;           // M(t) = ||u||_L2^2
  std::vector<double> gauged_energy;  // E(t) = ||dx v||^2 + |mu|^2 ||v||_L4^4
  double max_mass_drift = 0.0;        // max |M/M0 - 1|
  double max_energy_drift = 0.0;
};

/// Conserved-quantity drift along a trajectory. The laws hold for the
/// special coefficient case only; other coefficients are rejected.
ConservationReport conservation_report(const Trajectory& traj, const Coefficients& c);

struct GronwallReport {
  std::vector<double> times;
  std::vector<double> lhs;                // ||u1(t) - u2(t)||_L2^2
  std::vector<double> exponent_integral;  // int_0^t (||dx u1||_inf + ||dx u2||_inf)
  double c_min = 0.0;  // minimal C >= 0 making the bound hold at every sample
};

/// Gronwall-type L2 difference bound check between two aligned trajectories
/// (special case only).
GronwallReport l2_difference_check(const Trajectory& a, const Trajectory& b,
                                   const Coefficients& c);

/// v(t) = e^{-Lambda(t)} u(t) per sample; diagnostics are copied through.
Trajectory gauge_transform_trajectory(const Trajectory& traj, const Coefficients& c);

}  // namespace dnls
