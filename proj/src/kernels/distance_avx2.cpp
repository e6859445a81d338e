// Compiled with -mavx2; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>

#include "strainscope/kernels.hpp"

namespace strainscope::kernels {

namespace {

inline double horizontal_sum(__m256d v) noexcept {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d squared_lanes(__m256d q0, __m256d q1, const double* row) noexcept {
  __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(row), q0);
  __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(row + 4), q1);
  return _mm256_add_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1));
}

}  // namespace

double squared_distance_avx2(const double* a, const double* b) noexcept {
  return horizontal_sum(squared_lanes(_mm256_loadu_pd(a), _mm256_loadu_pd(a + 4), b));
}

void distance_row_avx2(const double* query, const double* rows, std::size_t count, double* out) noexcept {
  const __m256d q0 = _mm256_loadu_pd(query);
  const __m256d q1 = _mm256_loadu_pd(query + 4);
  std::size_t j = 0;
  // Four rows per iteration so the square roots run as one vector op.
  for (; j + 4 <= count; j += 4) {
    const double* r = rows + j * kProfileStride;
    alignas(32) double sums[4] = {horizontal_sum(squared_lanes(q0, q1, r)),
                                  horizontal_sum(squared_lanes(q0, q1, r + kProfileStride)),
                                  horizontal_sum(squared_lanes(q0, q1, r + 2 * kProfileStride)),
                                  horizontal_sum(squared_lanes(q0, q1, r + 3 * kProfileStride))};
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(_mm256_load_pd(sums)));
  }
  for (; j < count; ++j) out[j] = std::sqrt(horizontal_sum(squared_lanes(q0, q1, rows + j * kProfileStride)));
}

}  // namespace strainscope::kernels
