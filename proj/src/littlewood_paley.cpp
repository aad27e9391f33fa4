#include "dnls/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnls/spectral.hpp"

namespace dnls {

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double leq_symbol(double eta, int k) {
  if (k <= -1) return 0.0;
  return bump(eta / std::exp2(k));
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  const double b = psi(1.0 - t);
  return a / (a + b);
}

double bump(double xi) { return smooth_step(2.0 - std::abs(xi)); }

double ProjectorSelector::symbol(double eta) const {
  switch (kind) {
    case Kind::Leq:
      return leq_symbol(eta, k);
    case Kind::Band:
      return leq_symbol(eta, k) - leq_symbol(eta, k - 1);
    case Kind::Range: {
      // sum of bands j..k telescopes
      return leq_symbol(eta, k) - leq_symbol(eta, j - 1);
    }
    case Kind::Geq:
      return 1.0 - leq_symbol(eta, j - 1);
  }
  return 0.0;
}

Field project(const Field& f, const ProjectorSelector& sel) {
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  std::vector<Complex> out(fh.values().begin(), fh.values().end());
  for (int m = 0; m < g.n; ++m) out[m] *= sel.symbol(g.freqs[m]);
  Field r(fh.grid_ptr(), std::move(out), Representation::Spectral);
  return (f.representation() == Representation::Physical) ? to_physical(r) : r;
}

int max_shell(const Grid& g) {
  const double etamax = g.nyquist();
  int k = 0;
  while (std::exp2(k) < etamax) ++k;
  return k;
}

double bernstein_ratio(const Field& f, int l) {
  const Field pl = project(f, ProjectorSelector::band(l));
  const double n2 = l2_norm(pl);
  if (n2 <= 1e-14 * (l2_norm(f) + 1e-300)) {
    throw std::invalid_argument("bernstein_ratio: band " + std::to_string(l) +
                                " content is zero");
  }
  return linf_norm(pl) / (std::exp2(0.5 * l) * n2);
}

namespace {

double lp_norm(const Field& f, LpExponent p) {
  return p == LpExponent::Two ? l2_norm(f) : linf_norm(f);
}

// cyclic shift by `shift` samples: (T_y w)(x_j) = w(x_{j+shift})
Field shift_samples(const Field& f, int shift) {
  const int n = f.size();
  std::vector<Complex> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = f[(i + shift) % n];
  return Field(f.grid_ptr(), std::move(out), Representation::Physical);
}

}  // namespace

double commutator_ratio(const Field& f, const Field& g, int k, LpExponent p,
                        bool low_pass_form) {
  const Field fp = low_pass_form
                       ? as_physical(project(f, ProjectorSelector::leq(k - 3)))
                       : as_physical(f);
  const Field gp = as_physical(g);

  const auto pk = ProjectorSelector::band(k);
  const Field comm =
      project(pointwise_product(fp, gp), pk) - pointwise_product(fp, project(gp, pk));
  const double num = lp_norm(comm, p);

  const Field dfp = as_physical(derivative(fp));
  const Field gden =
      low_pass_form ? as_physical(project(gp, ProjectorSelector::range(k - 2, k + 2)))
                    : gp;
  double sup = 0.0;
  for (int y = 0; y < fp.size(); ++y) {
    sup = std::max(sup, lp_norm(pointwise_product(shift_samples(dfp, y), gden), p));
  }
  const double den = std::exp2(-static_cast<double>(k)) * sup;
  if (den <= 1e-280) {
    throw std::invalid_argument("commutator_ratio: degenerate (zero) majorant");
  }
  return num / den;
}

}  // namespace dnls
