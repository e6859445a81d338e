#include <cstdlib>
#include <string_view>

#include "strainscope/kernels.hpp"

namespace strainscope::kernels {

namespace {

constexpr DistanceKernels kScalar{Isa::Scalar, &squared_distance_scalar, &distance_row_scalar};
#if defined(STRAINSCOPE_HAVE_AVX2)
constexpr DistanceKernels kAvx2{Isa::Avx2, &squared_distance_avx2, &distance_row_avx2};
#endif

Isa pick() noexcept {
  if (const char* forced = std::getenv("STRAINSCOPE_SIMD"); forced && std::string_view(forced) == "scalar") {
    return Isa::Scalar;
  }
  return cpu_supports(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(STRAINSCOPE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const DistanceKernels& kernels_for(Isa isa) noexcept {
#if defined(STRAINSCOPE_HAVE_AVX2)
  if (isa == Isa::Avx2 && cpu_supports(Isa::Avx2)) return kAvx2;
#else
  (void)isa;
#endif
  return kScalar;
}

const DistanceKernels& active_kernels() noexcept {
  static const DistanceKernels& selected = kernels_for(pick());
  return selected;
}

}  // namespace strainscope::kernels
