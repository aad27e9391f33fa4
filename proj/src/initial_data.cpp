#include "dnls/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dnls/spectral.hpp"

namespace dnls {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t s = seed;
  for (auto& st : state_) st = splitmix64(s);
}

// xoshiro256++
uint64_t Rng::next_u64() {
  const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

Complex Rng::normal_complex() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Field gaussian_field(GridPtr grid, Complex amplitude, double sigma, double center) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_field: sigma must be > 0");
  std::vector<Complex> vals(static_cast<size_t>(grid->n));
  for (int j = 0; j < grid->n; ++j) {
    const double z = (grid->points[j] - center) / sigma;
    vals[j] = amplitude * std::exp(-0.5 * z * z);
  }
  return Field(std::move(grid), std::move(vals), Representation::Physical);
}

Field soliton_field(GridPtr grid, Complex amplitude, double width, double center,
                    double velocity) {
  if (!(width > 0.0)) throw std::invalid_argument("soliton_field: width must be > 0");
  std::vector<Complex> vals(static_cast<size_t>(grid->n));
  for (int j = 0; j < grid->n; ++j) {
    const double x = grid->points[j];
    const double ph = velocity * x;
    vals[j] = amplitude / std::cosh((x - center) / width) *
              Complex(std::cos(ph), std::sin(ph));
  }
  return Field(std::move(grid), std::move(vals), Representation::Physical);
}

Field tone_sum_field(GridPtr grid,
                     const std::vector<std::pair<Complex, double>>& tones) {
  std::vector<Complex> vals(static_cast<size_t>(grid->n), Complex(0, 0));
  for (const auto& [amp, freq] : tones) {
    const double snapped = grid->deta * std::round(freq / grid->deta);
    for (int j = 0; j < grid->n; ++j) {
      const double ph = snapped * grid->points[j];
      vals[j] += amp * Complex(std::cos(ph), std::sin(ph));
    }
  }
  return Field(std::move(grid), std::move(vals), Representation::Physical);
}

Field random_decay_field(GridPtr grid, Rng& rng, double decay, double l2_target) {
  std::vector<Complex> modes(static_cast<size_t>(grid->n));
  for (int m = 0; m < grid->n; ++m) {
    const double eta = grid->freqs[m];
    modes[m] = rng.normal_complex() * std::pow(1.0 + eta * eta, -0.5 * decay);
  }
  Field f = to_physical(Field(grid, std::move(modes), Representation::Spectral));
  return normalize_l2(f, l2_target);
}

Field normalize_l2(const Field& f, double target) {
  const double n = l2_norm(f);
  if (n == 0.0) throw std::invalid_argument("normalize_l2: zero field");
  return (target / n) * f;
}

}  // namespace dnls
