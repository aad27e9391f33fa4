#pragma once

#include <stdexcept>

#include "dnls/field.hpp"
#include "dnls/spectral.hpp"
#include "dnls/trajectory.hpp"

namespace dnls {

/// Nonlinearity coefficients (lambda, mu) of dx(lambda u^2 + mu |u|^2).
struct Coefficients {
  Complex lambda{0.0, 0.0};
  Complex mu{0.0, 0.0};

  /// 2*lambda + conj(mu) == 0 makes Re(2 lambda z + mu conj(z)) = 0 for every
  /// z, hence a purely imaginary gauge phase and conserved mass/energy.
  bool special_case() const {
    return std::abs(2.0 * lambda + std::conj(mu)) <= 1e-14;
  }
};

/// e^{Lambda} would overflow past this; the gauge maps refuse instead of
/// producing infinities.
inline constexpr double kGaugeOverflowGuard = 700.0;

struct GaugeOverflow : std::runtime_error {
  explicit GaugeOverflow(double max_re)
      : std::runtime_error("gauge overflow: max |Re Lambda| = " +
                           std::to_string(max_re)),
        max_re_lambda(max_re) {}
  double max_re_lambda;
};

struct PhaseResult {
  Field phase;                // Lambda, physical representation, Lambda(x_left) = 0
  bool decay_warning = false;
};

/// Lambda = 2*lambda*primitive(u) + mu*primitive(conj u). The primitive's
/// decay warning propagates.
PhaseResult gauge_phase(const Field& u, const Coefficients& c,
                        double decay_tol = kDefaultDecayTol);

enum class GaugeDirection { Forward, Inverse };  // e^{-Lambda} u  /  e^{+Lambda} u

Field apply_gauge(const Field& u, const Field& phase, GaugeDirection dir);

/// N^{(3)}_eps(u) + eps * N^{(2)}(u):
///   N3 = -2 i lambda^2 eps u^3 + (|mu|^2 - 2 i lambda mu eps) |u|^2 u
///        + (mu conj(lambda) + (1/2)(1 - i eps) mu^2) |u|^2 conj(u)
///   N2 = i (2 lambda u + mu conj(u)) dx u
/// At eps = 0 this is |mu|^2 |u|^2 u + (mu conj(lambda) + mu^2/2) |u|^2 conj(u);
/// the second coefficient vanishes exactly in the special case, leaving the
/// cubic NLS nonlinearity.
Field gauged_nonlinearity(const Field& u, const Coefficients& c, double epsilon);

struct InverseGaugeResult {
  Field u;
  Field phase;  // the marched Lambda with Lambda(x_left) = 0
  bool decay_warning = false;
};

/// Recovers u = e^{Lambda} v from v = e^{-Lambda} u by marching the spatial
/// initial-value problem
///   dx Lambda = 2*lambda*e^{Lambda} v + mu*conj(e^{Lambda} v),  Lambda(x_left)=0
/// with classical RK4 on a refined step dx/substeps; off-node samples of v
/// come from exact trigonometric interpolation. Throws GaugeOverflow if the
/// march leaves the overflow guard.
InverseGaugeResult invert_gauge(const Field& v, const Coefficients& c,
                                int substeps = 4,
                                double decay_tol = kDefaultDecayTol);

struct ResidualReport {
  std::vector<double> times;        // interior sample times
  std::vector<double> l2_residual;  // L2 norm of the gauge-identity residual
  double max_residual = 0.0;
};

/// Residual of the gauged equation on a stored trajectory: with
/// v = e^{-Lambda} u, evaluates
///   i dt v + (1/2)(1 - i eps) dxx v - e^{-Lambda}(N3_eps(u) + eps N2(u))
/// using centered time differences at interior samples and spectral space
/// derivatives. Needs at least 3 samples.
ResidualReport gauge_identity_residual(const Trajectory& traj,
                                       const Coefficients& c, double epsilon);

}  // namespace dnls
