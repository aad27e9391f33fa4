#pragma once

#include "dnls/field.hpp"

namespace dnls {

inline constexpr double kDefaultDecayTol = 1e-8;

double l2_norm(const Field& f);
double l4_norm(const Field& f);
double linf_norm(const Field& f);

/// Inhomogeneous Sobolev norm (sum_m (1+eta^2)^s |fhat_m|^2 deta)^{1/2}.
double sobolev_norm(const Field& f, double s);

/// Homogeneous counterpart with weight |eta|^{2s}.
double homogeneous_sobolev_norm(const Field& f, double s);

/// Spectral derivative of the given order (multiplier (i eta)^order).
Field derivative(const Field& f, int order = 1);

/// True when |f| on the outermost 5% of points (each side) stays below
/// decay_tol times max|f|. Vacuously true for f == 0.
bool decays_at_edges(const Field& f, double decay_tol = kDefaultDecayTol);

struct PrimitiveResult {
  Field antiderivative;
  bool decay_warning = false;
};

/// Antiderivative F with F(x_left) = 0 and F' = f spectrally: the zero-mean
/// part is inverted by division by (i eta); the mean contributes
/// mean * (x - x_left). The decay precondition is monitored, not enforced:
/// violation sets decay_warning on the result.
PrimitiveResult primitive(const Field& f, double decay_tol = kDefaultDecayTol);

struct XsNormResult {
  double value = 0.0;
  bool decay_warning = false;
};

/// X^s norm: sobolev_norm(f, s) + max over grid points of |primitive(f)|.
XsNormResult xs_norm_checked(const Field& f, double s,
                             double decay_tol = kDefaultDecayTol);
double xs_norm(const Field& f, double s, double decay_tol = kDefaultDecayTol);

/// 2/3-rule dealiasing: zeroes all modes with |m| >= n/3.
Field dealias_two_thirds(const Field& f);

/// Evaluates the trigonometric interpolant of f on the refined grid with
/// factor*n points (zero-padded spectrum). Returns a physical field on the
/// finer grid.
Field upsample(const Field& f, int factor);

}  // namespace dnls
