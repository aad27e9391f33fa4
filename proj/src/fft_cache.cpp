#include "fft_cache.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace dnls::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

std::mutex g_plan_mutex;
std::map<int, std::unique_ptr<PlanPair>>& plan_cache() {
  static auto* cache = new std::map<int, std::unique_ptr<PlanPair>>();
  return *cache;
}

// FFTW_UNALIGNED so plans may execute on arbitrary caller buffers via the
// new-array interface. FFTW_ESTIMATE keeps plan selection deterministic.
PlanPair& plans_for(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto pp = std::make_unique<PlanPair>();
  std::vector<std::complex<double>> a(n), b(n);
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  pp->forward = fftw_plan_dft_1d(n, ap, bp, FFTW_FORWARD, flags);
  pp->backward = fftw_plan_dft_1d(n, ap, bp, FFTW_BACKWARD, flags);
  auto [pos, inserted] = cache.emplace(n, std::move(pp));
  return *pos->second;
}

}  // namespace

void dft_forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  auto& pp = plans_for(n);
  fftw_execute_dft(pp.forward,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void dft_backward(int n, const std::complex<double>* in, std::complex<double>* out) {
  auto& pp = plans_for(n);
  fftw_execute_dft(pp.backward,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace dnls::detail
