#pragma once

#include <memory>
#include <vector>

namespace dnls {

/// Uniform periodic grid on [x_left, x_left + length).
///
/// Dual frequencies are eta_m = 2*pi*m/length for m in {-n/2, ..., n/2 - 1},
/// stored in FFT order (0, 1, ..., n/2-1, -n/2, ..., -1).
struct Grid {
  int n;
  double length;
  double x_left;
  double dx;
  double deta;  // frequency spacing 2*pi/length
  std::vector<double> points;
  std::vector<double> freqs;

  double nyquist() const { return deta * (n / 2); }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a grid. n must be even and >= 8, length positive.
GridPtr make_grid(int n, double length, double x_left);

}  // namespace dnls
