#pragma once

#include "dnls/field.hpp"

namespace dnls {

/// Parameters of the regularized propagator U_eps(t), the Fourier multiplier
/// exp(-(1/2)(i + eps) t eta^2). eps = 0 is the free Schroedinger group and
/// admits any real t; eps > 0 adds dissipation and forbids t < 0 (the
/// multiplier would be unbounded).
struct PropagatorSpec {
  double epsilon = 0.0;
  double t = 0.0;

  void validate() const;
};

Field propagate(const Field& f, const PropagatorSpec& spec);

/// ||U_eps(t) f||_{Hdot^{s2}} * (eps t)^{(s2-s1)/2} / ||f||_{Hdot^{s1}}.
/// Bounded by (s2-s1)^{(s2-s1)/2} e^{-(s2-s1)/2} (maximum of the scalar
/// weight over frequency). Requires eps > 0, t > 0, f != 0, s2 >= s1 >= 0.
double smoothing_ratio(const Field& f, const PropagatorSpec& spec, double s1,
                       double s2);

/// ||(U_eps1(t) - U_eps2(t)) f||_{H^s} / (|eps1-eps2|^{a/2} t^{a/2} ||f||_{H^{s+a}}).
/// Defined as 0 when eps1 == eps2. Requires eps1, eps2 in [0,1), t >= 0,
/// a in (0,2).
double propagate_difference(const Field& f, double t, double eps1, double eps2,
                            double a, double s = 0.0);

struct StrichartzReport {
  double sup_l2 = 0.0;      // ||u||_{L^inf_T L^2_x} / ||phi||_{L^2}
  double l4_linf = 0.0;     // ||u||_{L^4_T L^inf_x} / ||phi||_{L^2}
  double ratio = 0.0;       // sum of the two
};

/// Discrete Strichartz check for the free solution u(t) = U(t) phi over
/// [0, T] with n_t + 1 equispaced samples (composite trapezoid in time).
StrichartzReport strichartz_check(const Field& phi, double T, int n_t);

}  // namespace dnls
