#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// Deterministic RNG for reproducible experiments: xoshiro-free, fully
/// specified (splitmix64 seeding + 64-bit mixing), so identical seeds give
/// identical streams on every platform and toolchain.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform();        // [0, 1)
  double normal();         // standard normal via Box-Muller
  Complex normal_complex();  // independent N(0,1) real and imaginary parts

 private:
  uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Field gaussian_field(GridPtr grid, Complex amplitude, double sigma, double center);

/// amplitude * sech((x-center)/width) * exp(i velocity x)
Field soliton_field(GridPtr grid, Complex amplitude, double width, double center,
                    double velocity);

/// Sum of pure tones; frequencies snap to the nearest grid frequency.
Field tone_sum_field(GridPtr grid, const std::vector<std::pair<Complex, double>>& tones);

/// Random field with |fhat(eta)| proportional to (1+eta^2)^{-decay/2} and
/// complex standard normal mode amplitudes, scaled to the requested L2 norm.
Field random_decay_field(GridPtr grid, Rng& rng, double decay, double l2_target = 1.0);

/// Rescales to the requested L2 norm (errors on the zero field).
Field normalize_l2(const Field& f, double target = 1.0);

}  // namespace dnls
