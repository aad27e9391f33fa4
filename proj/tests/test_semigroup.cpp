#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/initial_data.hpp"
#include "dnls/linfit.hpp"
#include "dnls/semigroup.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("propagate: isometry at eps = 0, tone phase, identity at t = 0") {
  GridPtr g = make_grid(128, 2 * kPi, -kPi);
  Rng rng(1);
  const Field f = random_decay_field(g, rng, 1.0, 1.0);
  for (const double s : {0.0, 1.0, 2.0}) {
    const double before = sobolev_norm(f, s);
    const double after = sobolev_norm(propagate(f, {0.0, 1.7}), s);
    CHECK(std::abs(after - before) <= 1e-12 * before);
  }

  // single tone e^{i x}: multiplier e^{-i t eta^2 / 2} = e^{-i/2} at t = 1
  const Field t1 = tone_sum_field(g, {{Complex(1, 0), 1.0}});
  const Field moved = propagate(t1, {0.0, 1.0});
  const Complex expect = std::exp(Complex(0, -0.5));
  for (int j = 0; j < g->n; ++j) {
    CHECK(std::abs(moved[j] - expect * t1[j]) < 1e-13);
  }

  for (const double eps : {0.0, 0.3, 1.0}) {
    CHECK(l2_norm(propagate(f, {eps, 0.0}) - f) < 1e-14);
  }
}

TEST_CASE("propagate: precondition violations") {
  GridPtr g = make_grid(64, 10.0, 0.0);
  const Field f = Field::zeros(g);
  CHECK_THROWS_AS(propagate(f, {0.5, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(f, {-0.1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(f, {1.5, 1.0}), std::invalid_argument);
  CHECK_NOTHROW(propagate(f, {0.0, -2.0}));  // free group admits t < 0
}

TEST_CASE("group law and monotone dissipation") {
  GridPtr g = make_grid(128, 30.0, -15.0);
  Rng rng(2);
  const Field f = random_decay_field(g, rng, 1.0, 1.0);
  for (const double eps : {0.0, 0.2}) {
    const Field two_step = propagate(propagate(f, {eps, 0.4}), {eps, 0.9});
    const Field one_step = propagate(f, {eps, 1.3});
    CHECK(l2_norm(two_step - one_step) <= 1e-12);
  }
  double prev = l2_norm(f);
  for (const double t : {0.1, 0.5, 1.0, 3.0}) {
    const double now = l2_norm(propagate(f, {0.25, t}));
    CHECK(now <= prev * (1 + 1e-14));
    prev = now;
  }
}

TEST_CASE("smoothing_ratio: equal exponents and maximizing tone") {
  GridPtr g = make_grid(256, 2 * kPi, -kPi);
  Rng rng(3);
  const Field f = random_decay_field(g, rng, 1.0, 1.0);
  CHECK(smoothing_ratio(f, {0.3, 0.8}, 1.0, 1.0) <= 1.0 + 1e-14);

  // tone at eta = 4 with eps t = 1/16 sits exactly at the maximizer
  // eta^2 = sigma/(eps t) for sigma = 1; ratio there is sigma^{1/2} e^{-1/2}
  const Field t4 = tone_sum_field(g, {{Complex(1, 0), 4.0}});
  const double ratio = smoothing_ratio(t4, {0.25, 0.25}, 0.0, 1.0);
  CHECK(ratio == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("smoothing_ratio bounded by the analytic constant over a sweep") {
  GridPtr g = make_grid(256, 40.0, -20.0);
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const double sigma = (i % 3 == 0) ? 2.0 : 1.0;
    const double s1 = (i % 2 == 0) ? 0.0 : 0.5;
    const PropagatorSpec spec{1e-3 + rng.uniform() * 0.5, 1e-3 + rng.uniform()};
    const Field f = random_decay_field(g, rng, 0.6, 1.0);
    const double bound = std::pow(sigma, 0.5 * sigma) * std::exp(-0.5 * sigma);
    CHECK(smoothing_ratio(f, spec, s1, s1 + sigma) <= bound * (1 + 1e-9));
  }
}

TEST_CASE("smoothing_ratio preconditions") {
  GridPtr g = make_grid(64, 10.0, 0.0);
  Rng rng(5);
  const Field f = random_decay_field(g, rng, 1.0, 1.0);
  CHECK_THROWS_AS(smoothing_ratio(f, {0.0, 1.0}, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(smoothing_ratio(f, {0.5, 0.0}, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(smoothing_ratio(Field::zeros(g), {0.5, 1.0}, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(smoothing_ratio(f, {0.5, 1.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("propagate_difference: zero at equal eps, tone oracle, rate slope") {
  GridPtr g = make_grid(256, 2 * kPi, -kPi);
  CHECK(propagate_difference(tone_sum_field(g, {{Complex(1, 0), 2.0}}), 1.0, 0.3, 0.3,
                             1.0) == 0.0);

  // scalar multiplier arithmetic as the oracle for a single tone
  const double eta = 3.0, t = 0.7, e1 = 0.2, e2 = 0.05, a = 1.0, L = 2 * kPi;
  const Field tn = tone_sum_field(g, {{Complex(1, 0), eta}});
  const Complex m1 = std::exp(Complex(-0.5 * e1 * t * eta * eta, -0.5 * t * eta * eta));
  const Complex m2 = std::exp(Complex(-0.5 * e2 * t * eta * eta, -0.5 * t * eta * eta));
  const double num = std::abs(m1 - m2) * std::sqrt(L);
  const double den = std::pow(e1 - e2, 0.5 * a) * std::pow(t, 0.5 * a) *
                     std::sqrt(L) * std::pow(1 + eta * eta, 0.5 * a / 2.0 + 0.0);
  // H^{s+a} with s = 0: weight (1+eta^2)^{a/2}
  const double expect = num / (std::pow(e1 - e2, 0.5 * a) * std::pow(t, 0.5 * a) *
                               std::sqrt(L) * std::pow(1 + eta * eta, 0.5 * a));
  (void)den;
  CHECK(propagate_difference(tn, t, e1, e2, a) ==
        doctest::Approx(expect).epsilon(1e-12));

  // log-log slope of ||(U_eps - U_0)(t) f||_{H^s} in eps for smooth data is
  // at least a/2 - 0.05 (Gaussian data is so smooth the measured slope is ~1)
  GridPtr gg = make_grid(256, 40.0, -20.0);
  const Field f = gaussian_field(gg, Complex(1, 0), 2.0, 0.0);
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4};
  std::vector<double> diffs;
  for (const double e : eps) {
    diffs.push_back(sobolev_norm(propagate(f, {e, 1.0}) - propagate(f, {0.0, 1.0}), 0.0));
  }
  const LinearFit fit = fit_loglog(eps, diffs);
  CHECK(fit.slope >= 0.45);
}

TEST_CASE("propagate_difference preconditions") {
  GridPtr g = make_grid(64, 10.0, 0.0);
  Rng rng(6);
  const Field f = random_decay_field(g, rng, 1.0, 1.0);
  CHECK_THROWS_AS(propagate_difference(f, 1.0, 0.5, 0.1, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(propagate_difference(f, 1.0, 1.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_difference(f, -1.0, 0.5, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("strichartz_check: tone sup part, refinement, ensemble bound") {
  GridPtr g = make_grid(512, 80.0, -40.0);
  const Field t = tone_sum_field(g, {{Complex(1, 0), 2 * kPi / 80.0 * 8}});
  const StrichartzReport tr = strichartz_check(t, 1.0, 16);
  CHECK(tr.sup_l2 == doctest::Approx(1.0).epsilon(1e-12));

  // Gaussian value pinned against a 10x finer time grid
  const Field gauss = gaussian_field(g, Complex(1, 0), 2.0, 0.0);
  const double coarse = strichartz_check(gauss, 1.0, 64).ratio;
  const double fine = strichartz_check(gauss, 1.0, 640).ratio;
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-5));
  CHECK(coarse == doctest::Approx(1.5284384).epsilon(1e-6));  // regression value

  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    worst = std::max(worst, strichartz_check(random_decay_field(g, rng, 2.0, 1.0),
                                             1.0, 32)
                                .ratio);
  }
  CHECK(worst <= 2.5);  // pinned ensemble constant

  CHECK_THROWS_AS(strichartz_check(Field::zeros(g), 1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_check(gauss, 0.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_check(gauss, 1.0, 4), std::invalid_argument);
}

TEST_CASE("X^s growth of the propagator stays within (1+t) up to a constant") {
  GridPtr g = make_grid(256, 40.0, -20.0);
  Rng rng(8);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Field f = pointwise_product(random_decay_field(g, rng, 3.0, 1.0),
                                      gaussian_field(g, Complex(1, 0), 4.0, 0.0));
    const double t = 4.0 * rng.uniform();
    const double eps = (i % 2 == 0) ? 0.0 : 0.3 * rng.uniform();
    worst = std::max(worst, xs_norm(propagate(f, {eps, t}), 1.0) /
                                ((1.0 + t) * xs_norm(f, 1.0)));
  }
  CHECK(worst <= 1.5);  // empirical constant; the estimate itself is unquantified
}
