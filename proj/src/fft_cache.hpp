#pragma once

#include <complex>

// Internal FFTW shim. Plans are cached per size and created under a lock;
// execution uses the re-entrant new-array interface, so concurrent
// transforms are safe.

namespace dnls::detail {

// out = sum_j in_j e^{-2 pi i j m / n}  (unnormalized forward DFT)
void dft_forward(int n, const std::complex<double>* in, std::complex<double>* out);

// out = sum_m in_m e^{+2 pi i j m / n}  (unnormalized backward DFT)
void dft_backward(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace dnls::detail
