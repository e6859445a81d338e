#include <cmath>

#include "strainscope/kernels.hpp"

namespace strainscope::kernels {

double squared_distance_scalar(const double* a, const double* b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < kProfileStride; ++i) {
    const double d = b[i] - a[i];
    sum += d * d;
  }
  return sum;
}

void distance_row_scalar(const double* query, const double* rows, std::size_t count, double* out) noexcept {
  for (std::size_t j = 0; j < count; ++j) out[j] = std::sqrt(squared_distance_scalar(query, rows + j * kProfileStride));
}

}  // namespace strainscope::kernels
