#include "dnls/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/spectral.hpp"

namespace dnls {

void PropagatorSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("PropagatorSpec: epsilon must lie in [0,1]");
  }
  if (epsilon > 0.0 && t < 0.0) {
    throw std::invalid_argument(
        "PropagatorSpec: t < 0 with epsilon > 0 (backward diffusion)");
  }
  if (!std::isfinite(t)) throw std::invalid_argument("PropagatorSpec: t not finite");
}

Field propagate(const Field& f, const PropagatorSpec& spec) {
  spec.validate();
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  std::vector<Complex> out(fh.values().begin(), fh.values().end());
  for (int m = 0; m < g.n; ++m) {
    const double e2 = g.freqs[m] * g.freqs[m];
    const double damp = std::exp(-0.5 * spec.epsilon * spec.t * e2);
    const double ph = -0.5 * spec.t * e2;
    out[m] *= damp * Complex(std::cos(ph), std::sin(ph));
  }
  Field r(fh.grid_ptr(), std::move(out), Representation::Spectral);
  return (f.representation() == Representation::Physical) ? to_physical(r) : r;
}

double smoothing_ratio(const Field& f, const PropagatorSpec& spec, double s1,
                       double s2) {
  if (!(spec.epsilon > 0.0) || !(spec.t > 0.0)) {
    throw std::invalid_argument("smoothing_ratio: requires eps > 0 and t > 0");
  }
  if (!(s2 >= s1) || s1 < 0.0) {
    throw std::invalid_argument("smoothing_ratio: requires 0 <= s1 <= s2");
  }
  const double in = homogeneous_sobolev_norm(f, s1);
  if (in == 0.0) throw std::invalid_argument("smoothing_ratio: zero input field");
  const double out = homogeneous_sobolev_norm(propagate(f, spec), s2);
  return out * std::pow(spec.epsilon * spec.t, 0.5 * (s2 - s1)) / in;
}

double propagate_difference(const Field& f, double t, double eps1, double eps2,
                            double a, double s) {
  if (!(eps1 >= 0.0 && eps1 < 1.0 && eps2 >= 0.0 && eps2 < 1.0)) {
    throw std::invalid_argument("propagate_difference: eps must lie in [0,1)");
  }
  if (t < 0.0) throw std::invalid_argument("propagate_difference: t must be >= 0");
  if (!(a > 0.0 && a < 2.0)) {
    throw std::invalid_argument("propagate_difference: a must lie in (0,2)");
  }
  if (eps1 == eps2) return 0.0;
  const Field d = propagate(f, {eps1, t}) - propagate(f, {eps2, t});
  const double den = std::pow(std::abs(eps1 - eps2), 0.5 * a) * std::pow(t, 0.5 * a) *
                     sobolev_norm(f, s + a);
  if (den == 0.0) {
    throw std::invalid_argument("propagate_difference: degenerate denominator");
  }
  return sobolev_norm(d, s) / den;
}

StrichartzReport strichartz_check(const Field& phi, double T, int n_t) {
  if (!(T > 0.0)) throw std::invalid_argument("strichartz_check: T must be positive");
  if (n_t < 8) throw std::invalid_argument("strichartz_check: need n_t >= 8");
  const double phi_l2 = l2_norm(phi);
  if (phi_l2 == 0.0) throw std::invalid_argument("strichartz_check: zero field");

  const double dt = T / n_t;
  double sup_l2 = 0.0;
  double linf4_integral = 0.0;
  double prev4 = 0.0;
  for (int i = 0; i <= n_t; ++i) {
    const Field u = propagate(phi, {0.0, i * dt});
    sup_l2 = std::max(sup_l2, l2_norm(u));
    const double a = linf_norm(u);
    const double a4 = a * a * a * a;
    if (i > 0) linf4_integral += 0.5 * (prev4 + a4) * dt;
    prev4 = a4;
  }
  StrichartzReport rep;
  rep.sup_l2 = sup_l2 / phi_l2;
  rep.l4_linf = std::pow(linf4_integral, 0.25) / phi_l2;
  rep.ratio = rep.sup_l2 + rep.l4_linf;
  return rep;
}

}  // namespace dnls
