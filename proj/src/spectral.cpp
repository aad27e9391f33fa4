#include "dnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dnls {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

double l2_norm(const Field& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  const double w = (f.representation() == Representation::Physical) ? g.dx : g.deta;
  return std::sqrt(w * s);
}

double l4_norm(const Field& f) {
  const Field p = as_physical(f);
  double s = 0.0;
  for (const auto& v : p.values()) {
    const double a2 = std::norm(v);
    s += a2 * a2;
  }
  return std::pow(p.grid().dx * s, 0.25);
}

double linf_norm(const Field& f) {
  const Field p = as_physical(f);
  double m = 0.0;
  for (const auto& v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

double sobolev_norm(const Field& f, double s) {
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  double acc = 0.0;
  for (int m = 0; m < g.n; ++m) {
    const double eta = g.freqs[m];
    acc += std::pow(1.0 + eta * eta, s) * std::norm(fh[m]);
  }
  return std::sqrt(g.deta * acc);
}

double homogeneous_sobolev_norm(const Field& f, double s) {
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  double acc = 0.0;
  for (int m = 0; m < g.n; ++m) {
    const double eta = std::abs(g.freqs[m]);
    if (eta == 0.0) {
      if (s == 0.0) acc += std::norm(fh[m]);
      continue;
    }
    acc += std::pow(eta, 2.0 * s) * std::norm(fh[m]);
  }
  return std::sqrt(g.deta * acc);
}

Field derivative(const Field& f, int order) {
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  std::vector<Complex> out(fh.values().begin(), fh.values().end());
  for (int m = 0; m < g.n; ++m) {
    out[m] *= std::pow(Complex(0.0, g.freqs[m]), order);
  }
  Field r(fh.grid_ptr(), std::move(out), Representation::Spectral);
  return (f.representation() == Representation::Physical) ? to_physical(r) : r;
}

bool decays_at_edges(const Field& f, double decay_tol) {
  const Field p = as_physical(f);
  const int n = p.size();
  const int edge = std::max(1, n / 20);  // outermost 5% on each side
  double peak = 0.0;
  for (const auto& v : p.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return true;
  double edge_max = 0.0;
  for (int j = 0; j < edge; ++j) {
    edge_max = std::max(edge_max, std::abs(p[j]));
    edge_max = std::max(edge_max, std::abs(p[n - 1 - j]));
  }
  return edge_max <= decay_tol * peak;
}

PrimitiveResult primitive(const Field& f, double decay_tol) {
  const bool warn = !decays_at_edges(f, decay_tol);
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();

  std::vector<Complex> gh(static_cast<size_t>(g.n), Complex(0, 0));
  for (int m = 0; m < g.n; ++m) {
    const double eta = g.freqs[m];
    if (eta != 0.0) gh[m] = fh[m] / Complex(0.0, eta);
  }
  Field G = to_physical(Field(fh.grid_ptr(), std::move(gh), Representation::Spectral));

  // eta = 0 has no 1/(i eta) inverse; the mean integrates to mean*(x - x_left).
  const Complex mean = fh[0] * kSqrt2Pi / g.length;
  const Complex g0 = G[0];
  std::vector<Complex> vals(G.values().begin(), G.values().end());
  for (int j = 0; j < g.n; ++j) {
    vals[j] += -g0 + mean * (g.points[j] - g.x_left);
  }
  return PrimitiveResult{Field(fh.grid_ptr(), std::move(vals), Representation::Physical),
                         warn};
}

XsNormResult xs_norm_checked(const Field& f, double s, double decay_tol) {
  const PrimitiveResult pr = primitive(f, decay_tol);
  return XsNormResult{sobolev_norm(f, s) + linf_norm(pr.antiderivative),
                      pr.decay_warning};
}

double xs_norm(const Field& f, double s, double decay_tol) {
  return xs_norm_checked(f, s, decay_tol).value;
}

Field dealias_two_thirds(const Field& f) {
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  std::vector<Complex> out(fh.values().begin(), fh.values().end());
  for (int j = 0; j < g.n; ++j) {
    const int m = (j < g.n / 2) ? j : j - g.n;
    if (3 * std::abs(m) >= g.n) out[j] = Complex(0, 0);
  }
  Field r(fh.grid_ptr(), std::move(out), Representation::Spectral);
  return (f.representation() == Representation::Physical) ? to_physical(r) : r;
}

Field upsample(const Field& f, int factor) {
  if (factor < 1) throw std::invalid_argument("upsample: factor must be >= 1");
  const Field fh = as_spectral(f);
  const Grid& g = fh.grid();
  if (factor == 1) return to_physical(fh);
  GridPtr fine = make_grid(g.n * factor, g.length, g.x_left);
  std::vector<Complex> big(static_cast<size_t>(fine->n), Complex(0, 0));
  const int h = g.n / 2;
  for (int m = 0; m < h; ++m) big[m] = fh[m];
  for (int m = 1; m <= h; ++m) big[fine->n - m] = fh[g.n - m];
  return to_physical(Field(fine, std::move(big), Representation::Spectral));
}

}  // namespace dnls
