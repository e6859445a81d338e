#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "strainscope/behavior.hpp"

namespace strainscope {

/// Behavior prevalence of one family on a percent scale, in Behavior order.
/// Components need not sum to 100 since an address may carry an A and a B label.
struct FamilyProfile {
  std::string family;
  std::array<double, kBehaviorCount> p{};
  std::size_t denominator = 0;  // address nodes, None-labelled included
};

/// component i = 100 * (#addresses carrying behavior i) / #addresses.
/// Throws std::invalid_argument for an empty assignment list.
FamilyProfile profile(std::string_view family, const std::vector<AddressBehavior>& assignments);
FamilyProfile profile(std::string_view family, const std::vector<BehaviorAssignment>& assignments);

/// Euclidean distance over the seven components.
double distance(const FamilyProfile& p, const FamilyProfile& q);

struct DistanceMatrix {
  std::vector<std::string> families;
  std::vector<double> d;  // row-major, families.size()^2
  double d_max = 0.0;

  std::size_t size() const noexcept { return families.size(); }
  double at(std::size_t i, std::size_t j) const { return d[i * families.size() + j]; }
};

/// Throws std::invalid_argument for fewer than two profiles.
DistanceMatrix distance_matrix(const std::vector<FamilyProfile>& profiles, unsigned threads = 1);

/// Rebuilds d_max from the entries; used after reading a matrix from disk.
DistanceMatrix make_distance_matrix(std::vector<std::string> families, std::vector<double> entries);

struct PcaProjection {
  std::vector<std::string> families;
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> explained_variance{};
  std::array<std::array<double, kBehaviorCount>, 2> axes{};
  double total_variance = 0.0;
};

/// Projects mean-centred profiles on the two leading eigenvectors of the
/// sample covariance (n - 1 denominator). Each axis is oriented so its
/// largest-magnitude entry is positive (first such entry on ties).
/// Throws std::invalid_argument for fewer than three profiles.
PcaProjection pca_2d(const std::vector<FamilyProfile>& profiles);

struct ClusterStats {
  std::size_t cluster_count = 0;
  double average_population = 0.0;
  std::size_t max_population = 0;
  std::size_t min_population = 0;
  std::size_t clustered_strains = 0;
  std::size_t isolated_strains = 0;
};

struct ClusterReport {
  double lambda_pct = 0.0;
  double lambda = 0.0;
  std::vector<std::vector<std::string>> clusters;  // members in matrix order; clusters by first member
  std::vector<std::string> isolated;
  ClusterStats stats;
};

/// Connected components of the graph joining families with d <= lambda_pct * d_max / 100.
/// Throws std::invalid_argument unless 0 < lambda_pct <= 100.
ClusterReport cluster(const DistanceMatrix& matrix, double lambda_pct);

void write_profiles_csv(std::ostream& out, const std::vector<FamilyProfile>& profiles);
std::vector<FamilyProfile> read_profiles_csv(std::istream& in, std::string_view source);
void write_distances_csv(std::ostream& out, const DistanceMatrix& matrix);
DistanceMatrix read_distances_csv(std::istream& in, std::string_view source);
void write_pca_csv(std::ostream& out, const PcaProjection& projection);
/// JSON array with one object per report.
std::string clusters_json(const std::vector<ClusterReport>& reports);

}  // namespace strainscope
