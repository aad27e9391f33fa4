#include "dnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dnls {

GridPtr make_grid(int n, double length, double x_left) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("make_grid: n must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("make_grid: length must be positive");
  }
  auto g = std::make_shared<Grid>();
  g->n = n;
  g->length = length;
  g->x_left = x_left;
  g->dx = length / n;
  g->deta = 2.0 * std::numbers::pi / length;
  g->points.resize(n);
  g->freqs.resize(n);
  for (int j = 0; j < n; ++j) {
    g->points[j] = x_left + g->dx * j;
    const int m = (j < n / 2) ? j : j - n;  // FFT order
    g->freqs[j] = g->deta * m;
  }
  return g;
}

}  // namespace dnls
