#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace gch::detail {

namespace {

std::mutex plan_mutex;

// FFTW planning is not thread safe and (beyond ESTIMATE) not deterministic,
// so plans are created once under a lock with FFTW_ESTIMATE and executed via
// the new-array interface.  FFTW_UNALIGNED keeps the plans valid for plain
// std::vector storage.
fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_complex* a = fftw_alloc_complex(n);
  fftw_complex* b = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void exec_dft(int n, int sign, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan p = plan_for(n, sign);
  // Out-of-place c2c execution leaves the input untouched.
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace gch::detail
