#include "fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace stmas::detail {

void dft_many(std::complex<double> *data, std::size_t len, std::size_t count, std::size_t stride,
              std::size_t dist) {
  if (len == 0 || count == 0)
    return;
  int n = static_cast<int>(len);
  auto *buf = reinterpret_cast<fftw_complex *>(data);
  // FFTW_BACKWARD is the +i kernel. FFTW_ESTIMATE leaves the input intact
  // during planning and gives run-to-run identical results.
  fftw_plan plan =
      fftw_plan_many_dft(1, &n, static_cast<int>(count), buf, nullptr, static_cast<int>(stride),
                         static_cast<int>(dist), buf, nullptr, static_cast<int>(stride),
                         static_cast<int>(dist), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan)
    throw std::runtime_error("FFTW planning failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

} // namespace stmas::detail
