#pragma once

// Distance kernels over behavior profiles. Profiles are stored padded to
// kProfileStride doubles (trailing lanes zero) so one AVX2 pass covers a row.
// The scalar versions are the reference; every SIMD variant is tested against
// them.

#include <cstddef>
#include <string_view>

namespace strainscope::kernels {

inline constexpr std::size_t kProfileStride = 8;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

using SquaredDistanceFn = double (*)(const double* a, const double* b) noexcept;
/// out[j] = euclidean distance between `query` and row j of `rows` (count x stride).
using DistanceRowFn = void (*)(const double* query, const double* rows, std::size_t count, double* out) noexcept;

struct DistanceKernels {
  Isa isa;
  SquaredDistanceFn squared_distance;
  DistanceRowFn distance_row;
};

double squared_distance_scalar(const double* a, const double* b) noexcept;
void distance_row_scalar(const double* query, const double* rows, std::size_t count, double* out) noexcept;

#if defined(STRAINSCOPE_HAVE_AVX2)
double squared_distance_avx2(const double* a, const double* b) noexcept;
void distance_row_avx2(const double* query, const double* rows, std::size_t count, double* out) noexcept;
#endif

/// True when the running CPU can execute the given variant.
bool cpu_supports(Isa isa) noexcept;

/// Kernels for a specific variant; falls back to scalar if unsupported.
const DistanceKernels& kernels_for(Isa isa) noexcept;

/// Best supported variant, chosen once per process. STRAINSCOPE_SIMD=scalar
/// forces the reference path.
const DistanceKernels& active_kernels() noexcept;

}  // namespace strainscope::kernels
