#pragma once

#include <span>

namespace dnls {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double ci95_halfwidth = 0.0;  // t-quantile * stderr
  double r2 = 0.0;
  int n = 0;
};

/// Ordinary least squares y = slope*x + intercept. Throws on n < 2 or a
/// degenerate abscissa.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

/// Fit in log-log coordinates; all inputs must be strictly positive.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace dnls
