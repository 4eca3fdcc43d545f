#pragma once

#include <fftw3.h>

#include <vector>

#include "circle/core.hpp"

namespace circle {

// values[j] = sum_n coeffs[n] e(n j / M), M = coeffs.size().
inline std::vector<cplx> eval_on_grid(const std::vector<cplx>& coeffs) {
  const int M = static_cast<int>(coeffs.size());
  std::vector<cplx> out(coeffs.size());
  std::vector<cplx> in = coeffs;
  fftw_plan plan = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

// Smallest power of two >= n.
inline std::size_t pow2_at_least(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace circle
