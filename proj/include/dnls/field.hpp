#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

using Complex = std::complex<double>;

enum class Representation { Physical, Spectral };

/// A complex-valued function sampled on a Grid, in physical or spectral form.
///
/// The transform pair is the grid analogue of the unitary convention
/// F phi(eta) = (2*pi)^{-1/2} \int phi(x) e^{-i x eta} dx:
///
///   fhat_m = dx  / sqrt(2 pi) * sum_j f_j e^{-i x_j eta_m}
///   f_j    = deta/ sqrt(2 pi) * sum_m fhat_m e^{+i x_j eta_m}
///
/// so the discrete Parseval identity dx*sum|f_j|^2 = deta*sum|fhat_m|^2
/// holds exactly (up to roundoff). Fields are immutable in practice: all
/// operations return new fields.
class Field {
 public:
  Field(GridPtr grid, std::vector<Complex> values, Representation rep);

  static Field zeros(GridPtr grid, Representation rep = Representation::Physical);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const { return rep_; }
  std::span<const Complex> values() const { return values_; }
  std::vector<Complex>& raw() { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  Complex operator[](int i) const { return values_[static_cast<size_t>(i)]; }

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
  Representation rep_;
};

/// Transform to the other representation. Throws on representation mismatch.
Field to_spectral(const Field& f);
Field to_physical(const Field& f);

/// Tolerant variants: no-ops when already in the requested representation.
Field as_spectral(const Field& f);
Field as_physical(const Field& f);

// Pointwise algebra. Operands must share a grid and representation.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(Complex c, const Field& f);
Field operator*(double c, const Field& f);
Field conjugate(const Field& f);          // physical-space complex conjugate
Field pointwise_product(const Field& a, const Field& b);  // physical only
Field pointwise_exp(const Field& f);                      // physical only

bool all_finite(const Field& f);

}  // namespace dnls
