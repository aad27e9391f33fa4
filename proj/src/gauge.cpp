#include "dnls/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

namespace {

double max_abs_re(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v.real()));
  return m;
}

}  // namespace

PhaseResult gauge_phase(const Field& u, const Coefficients& c, double decay_tol) {
  const Field up = as_physical(u);
  const PrimitiveResult p1 = primitive(up, decay_tol);
  const PrimitiveResult p2 = primitive(conjugate(up), decay_tol);
  Field lam = (2.0 * c.lambda) * p1.antiderivative + c.mu * p2.antiderivative;
  return PhaseResult{std::move(lam), p1.decay_warning || p2.decay_warning};
}

Field apply_gauge(const Field& u, const Field& phase, GaugeDirection dir) {
  const Field ph = as_physical(phase);
  const double m = max_abs_re(ph);
  if (m > kGaugeOverflowGuard) throw GaugeOverflow(m);
  const Complex sign = (dir == GaugeDirection::Forward) ? Complex(-1, 0) : Complex(1, 0);
  return pointwise_product(as_physical(u), pointwise_exp(sign * ph));
}

Field gauged_nonlinearity(const Field& u, const Coefficients& c, double epsilon) {
  const Field up = as_physical(u);
  const Complex lam = c.lambda;
  const Complex mu = c.mu;
  const Complex ieps(0.0, epsilon);

  const Complex c3 = -2.0 * ieps * lam * lam;              // u^3
  const Complex cu = std::norm(mu) - 2.0 * ieps * lam * mu;  // |u|^2 u
  const Complex cb = mu * std::conj(lam) + 0.5 * (1.0 - ieps) * mu * mu;  // |u|^2 conj u

  std::vector<Complex> out(static_cast<size_t>(up.size()));
  const Field du = as_physical(derivative(up));
  for (int i = 0; i < up.size(); ++i) {
    const Complex v = up[i];
    const double a2 = std::norm(v);
    Complex r = c3 * v * v * v + cu * a2 * v + cb * a2 * std::conj(v);
    if (epsilon != 0.0) {
      r += epsilon * Complex(0, 1) * (2.0 * lam * v + mu * std::conj(v)) * du[i];
    }
    out[i] = r;
  }
  return Field(up.grid_ptr(), std::move(out), Representation::Physical);
}

InverseGaugeResult invert_gauge(const Field& v, const Coefficients& c, int substeps,
                                double decay_tol) {
  if (substeps < 1) throw std::invalid_argument("invert_gauge: substeps must be >= 1");
  const Field vp = as_physical(v);
  const bool warn = !decays_at_edges(vp, decay_tol);
  const Grid& g = vp.grid();

  // Sample v on the doubled marching lattice (nodes and midpoints of the
  // RK4 substeps).
  const int factor = 2 * substeps;
  const Field vf = upsample(vp, factor);
  const auto fine = vf.values();
  const int nf = vf.size();
  const double h = g.dx / substeps;

  const Complex two_lam = 2.0 * c.lambda;
  const auto rhs = [&](Complex vv, Complex lam_val) -> Complex {
    const Complex w = std::exp(lam_val) * vv;
    return two_lam * w + c.mu * std::conj(w);
  };

  std::vector<Complex> lam(static_cast<size_t>(g.n), Complex(0, 0));
  Complex cur(0, 0);
  for (int jnode = 0; jnode + 1 < g.n; ++jnode) {
    for (int s = 0; s < substeps; ++s) {
      const int i0 = jnode * factor + 2 * s;
      const Complex v0 = fine[i0];
      const Complex vh = fine[i0 + 1];
      const Complex v1 = fine[(i0 + 2) % nf];
      const Complex k1 = rhs(v0, cur);
      const Complex k2 = rhs(vh, cur + 0.5 * h * k1);
      const Complex k3 = rhs(vh, cur + 0.5 * h * k2);
      const Complex k4 = rhs(v1, cur + h * k3);
      cur += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (std::abs(cur.real()) > kGaugeOverflowGuard) {
        throw GaugeOverflow(std::abs(cur.real()));
      }
    }
    lam[static_cast<size_t>(jnode) + 1] = cur;
  }

  Field phase(vp.grid_ptr(), std::move(lam), Representation::Physical);
  Field u = apply_gauge(vp, phase, GaugeDirection::Inverse);
  return InverseGaugeResult{std::move(u), std::move(phase), warn};
}

ResidualReport gauge_identity_residual(const Trajectory& traj, const Coefficients& c,
                                       double epsilon) {
  if (traj.size() < 3) {
    throw std::invalid_argument("gauge_identity_residual: need at least 3 samples");
  }
  ResidualReport rep;
  const Complex half_visc = 0.5 * Complex(1.0, -epsilon);

  std::vector<Field> v;
  v.reserve(static_cast<size_t>(traj.size()));
  for (int i = 0; i < traj.size(); ++i) {
    const PhaseResult ph = gauge_phase(traj.at(i), c);
    v.push_back(apply_gauge(traj.at(i), ph.phase, GaugeDirection::Forward));
  }

  for (int i = 1; i + 1 < traj.size(); ++i) {
    const double dt_m = traj.times[i] - traj.times[i - 1];
    const double dt_p = traj.times[i + 1] - traj.times[i];
    if (std::abs(dt_p - dt_m) > 1e-12 * (dt_p + dt_m)) {
      throw std::invalid_argument(
          "gauge_identity_residual: non-uniform sample spacing");
    }
    const Field vt = (1.0 / (dt_m + dt_p)) * (v[i + 1] - v[i - 1]);
    const Field vxx = derivative(v[i], 2);
    const PhaseResult ph = gauge_phase(traj.at(i), c);
    const Field rhs = apply_gauge(gauged_nonlinearity(traj.at(i), c, epsilon),
                                  ph.phase, GaugeDirection::Forward);
    const Field res = Complex(0, 1) * vt + half_visc * as_physical(vxx) - rhs;
    rep.times.push_back(traj.times[i]);
    rep.l2_residual.push_back(l2_norm(res));
    rep.max_residual = std::max(rep.max_residual, rep.l2_residual.back());
  }
  return rep;
}

}  // namespace dnls
