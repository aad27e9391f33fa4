#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/initial_data.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

constexpr double kPi = std::numbers::pi;

Field tone(GridPtr g, double freq, Complex amp = Complex(1, 0)) {
  return tone_sum_field(std::move(g), {{amp, freq}});
}

// smooth compactly supported bump, zero outside |x| < radius
Field compact_bump(GridPtr g, double radius) {
  std::vector<Complex> v(static_cast<size_t>(g->n));
  for (int j = 0; j < g->n; ++j) {
    const double z = g->points[j] / radius;
    v[j] = (std::abs(z) < 1.0) ? std::exp(-1.0 / (1.0 - z * z)) : 0.0;
  }
  return Field(std::move(g), std::move(v), Representation::Physical);
}

}  // namespace

TEST_CASE("make_grid dual frequencies") {
  const GridPtr g = make_grid(8, 2 * kPi, -kPi);
  CHECK(g->dx == doctest::Approx(kPi / 4).epsilon(1e-15));
  const std::vector<double> expect = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int i = 0; i < 8; ++i) CHECK(g->freqs[i] == doctest::Approx(expect[i]));

  const GridPtr g2 = make_grid(8, 4 * kPi, 0.0);
  const std::vector<double> expect2 = {0, 0.5, 1, 1.5, -2, -1.5, -1, -0.5};
  for (int i = 0; i < 8; ++i) CHECK(g2->freqs[i] == doctest::Approx(expect2[i]));

  // zero appears exactly once, the rest pair up save the lone Nyquist mode
  int zeros = 0;
  for (const double f : g->freqs) zeros += (f == 0.0);
  CHECK(zeros == 1);
}

TEST_CASE("make_grid rejects bad parameters") {
  CHECK_THROWS_AS(make_grid(7, 2 * kPi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6, 2 * kPi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(64, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("transforms: constant, tone, roundtrip, representation errors") {
  GridPtr g = make_grid(64, 10.0, -5.0);
  const Field one(g, std::vector<Complex>(64, Complex(1, 0)), Representation::Physical);
  const Field oneh = to_spectral(one);
  for (int m = 1; m < 64; ++m) CHECK(std::abs(oneh[m]) < 1e-13);
  CHECK(std::abs(oneh[0]) > 1.0);

  const Field t = tone(g, g->freqs[5]);
  const Field th = to_spectral(t);
  for (int m = 0; m < 64; ++m) {
    if (m != 5) CHECK(std::abs(th[m]) < 1e-12);
  }

  const Field back = to_physical(th);
  CHECK(l2_norm(back - t) / l2_norm(t) < 1e-12);

  CHECK_THROWS_AS(to_spectral(th), std::invalid_argument);
  CHECK_THROWS_AS(to_physical(t), std::invalid_argument);
}

TEST_CASE("Parseval over random fields") {
  GridPtr g = make_grid(128, 37.0, -11.0);
  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const Field f = random_decay_field(g, rng, 1.0 + rng.uniform(), 1.0);
    const double phys = l2_norm(f);
    const double spec = l2_norm(to_spectral(f));
    CHECK(std::abs(phys - spec) <= 1e-12 * phys);
  }
}

TEST_CASE("sobolev_norm single tone and s = 0") {
  const double L = 20.0;
  GridPtr g = make_grid(128, L, -10.0);
  const double eta0 = g->freqs[7];
  const Field t = tone(g, eta0);
  for (const double s : {-0.25, 0.0, 1.0, 2.5}) {
    const double expect = std::sqrt(L) * std::pow(1.0 + eta0 * eta0, 0.5 * s);
    CHECK(sobolev_norm(t, s) == doctest::Approx(expect).epsilon(1e-12));
  }
  Rng rng(5);
  const Field f = random_decay_field(g, rng, 2.0, 1.0);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
}

TEST_CASE("sobolev_norm Gaussian against quadrature oracle") {
  // oracle: (1/sqrt(2)) e^{-eta^2/4} is the exact transform of e^{-x^2};
  // integrate (1+eta^2)|phi_hat|^2 with a fine trapezoid, independent of the
  // implementation path
  GridPtr g = make_grid(512, 40.0, -20.0);
  const Field gauss = gaussian_field(g, Complex(1, 0), std::sqrt(0.5), 0.0);
  const double s = 1.0;

  const int nq = 200000;
  const double hi = 60.0, h = 2 * hi / nq;
  double acc = 0.0;
  for (int i = 0; i <= nq; ++i) {
    const double eta = -hi + i * h;
    const double w = (i == 0 || i == nq) ? 0.5 : 1.0;
    const double mod2 = 0.5 * std::exp(-eta * eta / 2.0);
    acc += w * std::pow(1.0 + eta * eta, s) * mod2 * h;
  }
  const double oracle = std::sqrt(acc);
  CHECK(sobolev_norm(gauss, s) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("primitive of a derivative recovers the bump") {
  GridPtr g = make_grid(256, 40.0, -20.0);
  const Field bump = compact_bump(g, 10.0);
  const Field rec = primitive(derivative(bump)).antiderivative;
  CHECK(linf_norm(rec - bump) / linf_norm(bump) < 1e-10);
}

TEST_CASE("primitive: zero field and erf closed form") {
  GridPtr g = make_grid(512, 40.0, -20.0);
  const Field zero = Field::zeros(g);
  CHECK(linf_norm(primitive(zero).antiderivative) == 0.0);

  const Field gauss = gaussian_field(g, Complex(1, 0), std::sqrt(0.5), 0.0);
  const PrimitiveResult pr = primitive(gauss);
  CHECK_FALSE(pr.decay_warning);
  const double sqrt_pi = std::sqrt(kPi);
  double worst = 0.0;
  for (int j = 0; j < g->n; ++j) {
    const double exact = 0.5 * sqrt_pi * (1.0 + std::erf(g->points[j]));
    worst = std::max(worst, std::abs(pr.antiderivative[j] - Complex(exact, 0)));
  }
  CHECK(worst / sqrt_pi < 1e-8);
  CHECK(linf_norm(pr.antiderivative) == doctest::Approx(sqrt_pi).epsilon(1e-8));
}

TEST_CASE("primitive flags non-decaying data") {
  GridPtr g = make_grid(64, 2 * kPi, -kPi);
  const Field t = tone(g, 1.0);
  CHECK(primitive(t).decay_warning);
  CHECK(xs_norm_checked(t, 0.0).decay_warning);
}

TEST_CASE("primitive then derivative is the identity on decaying fields") {
  GridPtr g = make_grid(256, 60.0, -30.0);
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    Field f = pointwise_product(random_decay_field(g, rng, 2.5, 1.0),
                                gaussian_field(g, Complex(1, 0), 5.0, 0.0));
    const Field rec = derivative(primitive(f).antiderivative);
    CHECK(l2_norm(rec - f) / l2_norm(f) < 1e-10);
  }
}

TEST_CASE("xs_norm closed form for the Gaussian") {
  GridPtr g = make_grid(512, 40.0, -20.0);
  const Field gauss = gaussian_field(g, Complex(1, 0), std::sqrt(0.5), 0.0);
  // ||e^{-x^2}||_L2 = (pi/2)^{1/4}; sup of its primitive is sqrt(pi)
  const double expect = std::pow(kPi / 2.0, 0.25) + std::sqrt(kPi);
  CHECK(xs_norm(gauss, 0.0) == doctest::Approx(expect).epsilon(1e-6));
  CHECK(xs_norm(Field::zeros(g), 1.0) == 0.0);
}

TEST_CASE("xs_norm: windowed high tone has small primitive part") {
  GridPtr g = make_grid(512, 40.0, -20.0);
  const Field window = compact_bump(g, 8.0);
  const Field f = pointwise_product(tone(g, 32.0), window);
  const double prim_part = linf_norm(primitive(f).antiderivative);
  CHECK(prim_part > 0.0);
  // integration by parts: sup |int f| <= (||w||_inf + ||w'||_L1) / 32
  double w1 = 0.0;
  const Field dw = as_physical(derivative(window));
  for (const auto& v : dw.values()) w1 += std::abs(v) * g->dx;
  CHECK(prim_part <= 1.05 * (linf_norm(window) + w1) / 32.0);
  CHECK(prim_part <= 0.2 * sobolev_norm(f, 0.0));
}

TEST_CASE("xs_norm is a norm and monotone in s") {
  GridPtr g = make_grid(128, 50.0, -25.0);
  Rng rng(23);
  for (int i = 0; i < 25; ++i) {
    const Field f = pointwise_product(random_decay_field(g, rng, 2.0, 1.0),
                                      gaussian_field(g, Complex(1, 0), 4.0, 0.0));
    const Field h = pointwise_product(random_decay_field(g, rng, 2.0, 1.0),
                                      gaussian_field(g, Complex(1, 0), 4.0, 0.0));
    const double a = 0.1 + 3.0 * rng.uniform();
    CHECK(xs_norm(Complex(a, 0) * f, 1.0) ==
          doctest::Approx(a * xs_norm(f, 1.0)).epsilon(1e-12));
    CHECK(xs_norm(f + h, 1.0) <= xs_norm(f, 1.0) + xs_norm(h, 1.0) + 1e-12);

    const double s1 = -0.4 + rng.uniform();
    const double s2 = s1 + 2.0 * rng.uniform();
    CHECK(xs_norm(f, s1) <= xs_norm(f, s2) * (1 + 1e-12));
  }
}

TEST_CASE("dealias zeroes the top third") {
  GridPtr g = make_grid(96, 2 * kPi, -kPi);
  Rng rng(3);
  const Field f = random_decay_field(g, rng, 0.5, 1.0);
  const Field fd = to_spectral(dealias_two_thirds(f));
  for (int j = 0; j < g->n; ++j) {
    const int m = (j < g->n / 2) ? j : j - g->n;
    if (3 * std::abs(m) >= g->n) CHECK(std::abs(fd[j]) == 0.0);
  }
  // idempotent
  CHECK(l2_norm(dealias_two_thirds(dealias_two_thirds(f)) - dealias_two_thirds(f)) <
        1e-14);
}

TEST_CASE("upsample agrees at original nodes") {
  GridPtr g = make_grid(64, 17.0, -3.0);
  Rng rng(9);
  const Field f = random_decay_field(g, rng, 2.0, 1.0);
  const Field fine = upsample(f, 4);
  for (int j = 0; j < g->n; ++j) {
    CHECK(std::abs(fine[4 * j] - f[j]) < 1e-12);
  }
}
