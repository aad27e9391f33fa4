#include "dnls/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_cache.hpp"

namespace dnls {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;

void check_same(const Field& a, const Field& b, const char* op) {
  if (a.grid_ptr().get() != b.grid_ptr().get()) {
    throw std::invalid_argument(std::string(op) + ": fields on different grids");
  }
  if (a.representation() != b.representation()) {
    throw std::invalid_argument(std::string(op) +
                                ": fields in different representations");
  }
}
}  // namespace

Field::Field(GridPtr grid, std::vector<Complex> values, Representation rep)
    : grid_(std::move(grid)), values_(std::move(values)), rep_(rep) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  if (static_cast<int>(values_.size()) != grid_->n) {
    throw std::invalid_argument("Field: value count does not match grid");
  }
}

Field Field::zeros(GridPtr grid, Representation rep) {
  const int n = grid->n;
  return Field(std::move(grid), std::vector<Complex>(n, Complex(0, 0)), rep);
}

Field to_spectral(const Field& f) {
  if (f.representation() != Representation::Physical) {
    throw std::invalid_argument("to_spectral: field is already spectral");
  }
  const Grid& g = f.grid();
  std::vector<Complex> out(g.n);
  detail::dft_forward(g.n, f.values().data(), out.data());
  const double scale = g.dx / kSqrt2Pi;
  for (int m = 0; m < g.n; ++m) {
    // carry the x_left phase so that fhat_m = dx/sqrt(2pi) sum f_j e^{-i x_j eta_m}
    const double ph = -g.freqs[m] * g.x_left;
    out[m] *= scale * Complex(std::cos(ph), std::sin(ph));
  }
  return Field(f.grid_ptr(), std::move(out), Representation::Spectral);
}

Field to_physical(const Field& f) {
  if (f.representation() != Representation::Spectral) {
    throw std::invalid_argument("to_physical: field is already physical");
  }
  const Grid& g = f.grid();
  std::vector<Complex> tmp(g.n);
  auto vals = f.values();
  for (int m = 0; m < g.n; ++m) {
    const double ph = g.freqs[m] * g.x_left;
    tmp[m] = vals[m] * Complex(std::cos(ph), std::sin(ph));
  }
  std::vector<Complex> out(g.n);
  detail::dft_backward(g.n, tmp.data(), out.data());
  const double scale = g.deta / kSqrt2Pi;
  for (auto& v : out) v *= scale;
  return Field(f.grid_ptr(), std::move(out), Representation::Physical);
}

Field as_spectral(const Field& f) {
  return f.representation() == Representation::Spectral ? f : to_spectral(f);
}

Field as_physical(const Field& f) {
  return f.representation() == Representation::Physical ? f : to_physical(f);
}

Field operator+(const Field& a, const Field& b) {
  check_same(a, b, "operator+");
  std::vector<Complex> out(a.values().begin(), a.values().end());
  for (int i = 0; i < b.size(); ++i) out[i] += b[i];
  return Field(a.grid_ptr(), std::move(out), a.representation());
}

Field operator-(const Field& a, const Field& b) {
  check_same(a, b, "operator-");
  std::vector<Complex> out(a.values().begin(), a.values().end());
  for (int i = 0; i < b.size(); ++i) out[i] -= b[i];
  return Field(a.grid_ptr(), std::move(out), a.representation());
}

Field operator*(Complex c, const Field& f) {
  std::vector<Complex> out(f.values().begin(), f.values().end());
  for (auto& v : out) v *= c;
  return Field(f.grid_ptr(), std::move(out), f.representation());
}

Field operator*(double c, const Field& f) { return Complex(c, 0) * f; }

Field conjugate(const Field& f) {
  const Field p = as_physical(f);
  std::vector<Complex> out(p.values().begin(), p.values().end());
  for (auto& v : out) v = std::conj(v);
  return Field(p.grid_ptr(), std::move(out), Representation::Physical);
}

Field pointwise_product(const Field& a, const Field& b) {
  if (a.representation() != Representation::Physical ||
      b.representation() != Representation::Physical) {
    throw std::invalid_argument("pointwise_product: physical representation required");
  }
  check_same(a, b, "pointwise_product");
  std::vector<Complex> out(a.values().begin(), a.values().end());
  for (int i = 0; i < b.size(); ++i) out[i] *= b[i];
  return Field(a.grid_ptr(), std::move(out), Representation::Physical);
}

Field pointwise_exp(const Field& f) {
  if (f.representation() != Representation::Physical) {
    throw std::invalid_argument("pointwise_exp: physical representation required");
  }
  std::vector<Complex> out(f.values().begin(), f.values().end());
  for (auto& v : out) v = std::exp(v);
  return Field(f.grid_ptr(), std::move(out), Representation::Physical);
}

bool all_finite(const Field& f) {
  for (const auto& v : f.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace dnls
