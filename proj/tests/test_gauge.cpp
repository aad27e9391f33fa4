#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dnls/gauge.hpp"
#include "dnls/initial_data.hpp"

using namespace dnls;

namespace {
constexpr double kPi = std::numbers::pi;
const Coefficients kSpecial{Complex(0.0, 0.5), Complex(0.0, 1.0)};  // 2l+conj(m)=0
const Coefficients kGeneric{Complex(0.7, 0.2), Complex(0.3, -0.4)};

Field smooth_random(GridPtr g, Rng& rng, double amp = 1.0) {
  return Complex(amp, 0) * pointwise_product(random_decay_field(g, rng, 2.5, 1.0),
                                             gaussian_field(g, Complex(1, 0), 5.0, 0.0));
}
}  // namespace

TEST_CASE("special-case predicate") {
  CHECK(kSpecial.special_case());
  CHECK_FALSE(kGeneric.special_case());
  CHECK_FALSE(Coefficients{Complex(1, 0), Complex(0, 0)}.special_case());
  CHECK(Coefficients{Complex(0, 0), Complex(0, 0)}.special_case());
  // mu = -2 conj(lambda) for any lambda
  const Complex lam(0.3, -0.8);
  CHECK(Coefficients{lam, -2.0 * std::conj(lam)}.special_case());
}

TEST_CASE("gauge_phase: zero coefficients, erf oracle, derivative invariant") {
  GridPtr g = make_grid(512, 40.0, -20.0);
  const Field gauss = gaussian_field(g, Complex(1, 0), std::sqrt(0.5), 0.0);

  CHECK(linf_norm(gauge_phase(gauss, {Complex(0, 0), Complex(0, 0)}).phase) == 0.0);

  // lambda = 1, mu = 0: Lambda = 2 * (sqrt(pi)/2)(1 + erf x) = sqrt(pi)(1+erf x)
  const PhaseResult pr = gauge_phase(gauss, {Complex(1, 0), Complex(0, 0)});
  double worst = 0.0;
  for (int j = 0; j < g->n; ++j) {
    const double exact = std::sqrt(kPi) * (1.0 + std::erf(g->points[j]));
    worst = std::max(worst, std::abs(pr.phase[j] - Complex(exact, 0)));
  }
  CHECK(worst / std::sqrt(kPi) < 1e-8);
  CHECK(std::abs(pr.phase[0]) < 1e-12);  // Lambda(x_left) = 0

  // d/dx Lambda = 2 lambda u + mu conj(u) within 1e-10 relative
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const Field u = smooth_random(g, rng);
    const PhaseResult ph = gauge_phase(u, kGeneric);
    const Field lhs = derivative(ph.phase);
    const Field rhs = (2.0 * kGeneric.lambda) * u + kGeneric.mu * conjugate(u);
    CHECK(l2_norm(lhs - rhs) <= 1e-10 * (1.0 + sobolev_norm(u, 1.0)));
  }
}

TEST_CASE("special case: purely imaginary phase") {
  GridPtr g = make_grid(256, 60.0, -30.0);
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const Field u = smooth_random(g, rng);
    const PhaseResult ph = gauge_phase(u, kSpecial);
    double re = 0.0;
    for (const auto& z : ph.phase.values()) re = std::max(re, std::abs(z.real()));
    CHECK(re <= 1e-10 * (1.0 + l2_norm(u)));
  }
}

TEST_CASE("apply_gauge: roundtrip, unimodular special case, overflow guard") {
  GridPtr g = make_grid(256, 60.0, -30.0);
  Rng rng(3);
  const Field u = smooth_random(g, rng);

  const PhaseResult ph = gauge_phase(u, kSpecial);
  const Field v = apply_gauge(u, ph.phase, GaugeDirection::Forward);
  const Field back = apply_gauge(v, ph.phase, GaugeDirection::Inverse);
  CHECK(linf_norm(back - u) <= 1e-13 * std::max(1.0, linf_norm(u)));

  for (int j = 0; j < g->n; ++j) {
    CHECK(std::abs(std::abs(v[j]) - std::abs(u[j])) <= 1e-12 * (1.0 + std::abs(u[j])));
  }

  const Field zero_phase = Field::zeros(g);
  CHECK(linf_norm(apply_gauge(u, zero_phase, GaugeDirection::Forward) - u) == 0.0);

  Field big(g, std::vector<Complex>(static_cast<size_t>(g->n), Complex(800, 0)),
            Representation::Physical);
  CHECK_THROWS_AS(apply_gauge(u, big, GaugeDirection::Inverse), GaugeOverflow);
}

TEST_CASE("gauged_nonlinearity: zero data, mu = 0, special-case reduction") {
  GridPtr g = make_grid(128, 40.0, -20.0);
  CHECK(linf_norm(gauged_nonlinearity(Field::zeros(g), kGeneric, 0.3)) == 0.0);

  // mu = 0 at eps = 0: the lambda-only equation gauges to the free one
  Rng rng(4);
  const Field u = smooth_random(g, rng);
  CHECK(linf_norm(gauged_nonlinearity(u, {Complex(2, 1), Complex(0, 0)}, 0.0)) == 0.0);

  // eps = 0 special case: coefficient of |u|^2 conj(u) is
  // mu*conj(lambda) + mu^2/2 = 0, leaving |mu|^2 |u|^2 u (cubic NLS)
  const Field n = gauged_nonlinearity(u, kSpecial, 0.0);
  for (int j = 0; j < u.size(); ++j) {
    const Complex expect = std::norm(u[j]) * u[j];  // |mu|^2 = 1
    CHECK(std::abs(n[j] - expect) <= 1e-13 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("gauged_nonlinearity matches a term-by-term oracle at eps > 0") {
  GridPtr g = make_grid(128, 40.0, -20.0);
  Rng rng(5);
  const Field u = smooth_random(g, rng);
  const double eps = 0.37;
  const Complex lam = kGeneric.lambda, mu = kGeneric.mu;
  const Field du = as_physical(derivative(u));
  const Field n = gauged_nonlinearity(u, kGeneric, eps);
  for (int j = 0; j < u.size(); ++j) {
    const Complex z = u[j];
    const double a2 = std::norm(z);
    const Complex n3 = Complex(0, -2 * eps) * lam * lam * z * z * z +
                       (std::norm(mu) - Complex(0, 2 * eps) * lam * mu) * a2 * z +
                       (mu * std::conj(lam) + 0.5 * (Complex(1, -eps)) * mu * mu) * a2 *
                           std::conj(z);
    const Complex n2 = Complex(0, 1) * (2.0 * lam * z + mu * std::conj(z)) * du[j];
    const Complex expect = n3 + eps * n2;
    CHECK(std::abs(n[j] - expect) <= 1e-12 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("invert_gauge: identity coefficients, unimodularity, self-consistency") {
  GridPtr g = make_grid(512, 80.0, -40.0);
  Rng rng(6);
  const Field v = gaussian_field(g, Complex(0.4, 0.1), 2.0, 1.0);

  const InverseGaugeResult triv = invert_gauge(v, {Complex(0, 0), Complex(0, 0)});
  CHECK(linf_norm(triv.u - v) == 0.0);
  CHECK(linf_norm(triv.phase) == 0.0);

  const InverseGaugeResult sp = invert_gauge(v, kSpecial);
  for (int j = 0; j < g->n; ++j) {
    CHECK(std::abs(std::abs(sp.u[j]) - std::abs(v[j])) <=
          1e-10 * (1.0 + std::abs(v[j])));
  }

  for (const Coefficients& c : {kSpecial, kGeneric}) {
    for (int i = 0; i < 5; ++i) {
      const Field w = smooth_random(g, rng, 0.3);
      const InverseGaugeResult inv = invert_gauge(w, c);
      const PhaseResult re = gauge_phase(inv.u, c);
      CHECK(linf_norm(re.phase - inv.phase) <= 1e-8);
    }
  }
}

TEST_CASE("invert_gauge marching error falls fourth order in the substep") {
  GridPtr g = make_grid(128, 80.0, -40.0);
  const Field v = gaussian_field(g, Complex(0.5, 0.0), 2.0, 0.0);
  const auto residual = [&](int substeps) {
    const InverseGaugeResult inv = invert_gauge(v, kGeneric, substeps);
    return linf_norm(gauge_phase(inv.u, kGeneric).phase - inv.phase);
  };
  const double r1 = residual(1);
  const double r2 = residual(2);
  const double r4 = residual(4);
  CHECK(r1 / r2 > 10.0);  // ~16 for a fourth-order scheme
  CHECK(r2 / r4 > 10.0);
}

TEST_CASE("invert_gauge overflow guard trips instead of overflowing") {
  GridPtr g = make_grid(256, 80.0, -40.0);
  // large real lambda with O(1) mass drives Re Lambda over the guard
  const Field v = gaussian_field(g, Complex(3.0, 0), 3.0, 0.0);
  CHECK_THROWS_AS(invert_gauge(v, {Complex(60.0, 0), Complex(0, 0)}, 1),
                  GaugeOverflow);
}

TEST_CASE("gauge_identity_residual: zero trajectory and sample-count guard") {
  GridPtr g = make_grid(64, 20.0, -10.0);
  Trajectory traj;
  traj.grid = g;
  for (int i = 0; i < 5; ++i) {
    traj.times.push_back(0.1 * i);
    traj.fields.push_back(Field::zeros(g));
    traj.diagnostics.push_back({});
  }
  const ResidualReport rep = gauge_identity_residual(traj, kSpecial, 0.1);
  CHECK(rep.max_residual == 0.0);
  CHECK(rep.times.size() == 3);

  Trajectory two;
  two.grid = g;
  for (int i = 0; i < 2; ++i) {
    two.times.push_back(0.1 * i);
    two.fields.push_back(Field::zeros(g));
    two.diagnostics.push_back({});
  }
  CHECK_THROWS_AS(gauge_identity_residual(two, kSpecial, 0.1), std::invalid_argument);
}
