#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strainscope/kernels.hpp"
#include "strainscope/parallel.hpp"
#include "strainscope/similarity.hpp"

namespace strainscope {

namespace {

using kernels::kProfileStride;

std::array<double, kProfileStride> padded(const FamilyProfile& p) {
  std::array<double, kProfileStride> out{};
  std::copy(p.p.begin(), p.p.end(), out.begin());
  return out;
}

}  // namespace

double distance(const FamilyProfile& p, const FamilyProfile& q) {
  const auto a = padded(p);
  const auto b = padded(q);
  return std::sqrt(kernels::active_kernels().squared_distance(a.data(), b.data()));
}

DistanceMatrix distance_matrix(const std::vector<FamilyProfile>& profiles, unsigned threads) {
  if (profiles.size() < 2) throw std::invalid_argument("distance matrix needs at least two profiles");
  const std::size_t n = profiles.size();
  std::vector<double> rows(n * kProfileStride, 0.0);
  std::vector<std::string> families;
  families.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(profiles[i].p.begin(), profiles[i].p.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * kProfileStride));
    families.push_back(profiles[i].family);
  }
  std::vector<double> entries(n * n);
  const auto& kernel = kernels::active_kernels();
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      kernel.distance_row(rows.data() + i * kProfileStride, rows.data(), n, entries.data() + i * n);
    }
  });
  return make_distance_matrix(std::move(families), std::move(entries));
}

DistanceMatrix make_distance_matrix(std::vector<std::string> families, std::vector<double> entries) {
  const std::size_t n = families.size();
  if (entries.size() != n * n) throw std::invalid_argument("distance matrix entries do not match family count");
  DistanceMatrix matrix{std::move(families), std::move(entries), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) matrix.d_max = std::max(matrix.d_max, matrix.at(i, j));
    }
  }
  return matrix;
}

}  // namespace strainscope
