#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "strainscope/format.hpp"
#include "strainscope/similarity.hpp"

namespace strainscope {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index becomes the root so component ids are deterministic.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ClusterReport cluster(const DistanceMatrix& matrix, double lambda_pct) {
  if (!(lambda_pct > 0.0 && lambda_pct <= 100.0)) {
    throw std::invalid_argument("lambda_pct must be in (0, 100]");
  }
  ClusterReport report;
  report.lambda_pct = lambda_pct;
  report.lambda = lambda_pct * matrix.d_max / 100.0;

  const std::size_t n = matrix.size();
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.at(i, j) <= report.lambda) sets.unite(i, j);
    }
  }

  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[sets.find(i)].push_back(i);
  for (std::size_t root = 0; root < n; ++root) {
    const auto& group = members[root];
    if (group.empty()) continue;
    if (group.size() == 1) {
      report.isolated.push_back(matrix.families[group.front()]);
      continue;
    }
    auto& names = report.clusters.emplace_back();
    for (std::size_t i : group) names.push_back(matrix.families[i]);
  }

  auto& stats = report.stats;
  stats.cluster_count = report.clusters.size();
  stats.isolated_strains = report.isolated.size();
  for (const auto& c : report.clusters) {
    stats.clustered_strains += c.size();
    stats.max_population = std::max(stats.max_population, c.size());
    stats.min_population = stats.min_population == 0 ? c.size() : std::min(stats.min_population, c.size());
  }
  if (stats.cluster_count > 0) {
    stats.average_population = static_cast<double>(stats.clustered_strains) / static_cast<double>(stats.cluster_count);
  }
  return report;
}

void write_pca_csv(std::ostream& out, const PcaProjection& projection) {
  out << "# explained_variance," << fixed6(projection.explained_variance[0]) << ','
      << fixed6(projection.explained_variance[1]) << '\n';
  out << "family,pc1,pc2\n";
  for (std::size_t i = 0; i < projection.families.size(); ++i) {
    out << projection.families[i] << ',' << fixed6(projection.coords[i][0]) << ',' << fixed6(projection.coords[i][1])
        << '\n';
  }
}

std::string clusters_json(const std::vector<ClusterReport>& reports) {
  using nlohmann::ordered_json;
  ordered_json doc = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json entry;
    entry["lambda_pct"] = round6(r.lambda_pct);
    entry["lambda"] = round6(r.lambda);
    entry["clusters"] = r.clusters;
    entry["isolated"] = r.isolated;
    entry["stats"] = {
        {"clusters_number", r.stats.cluster_count},
        {"clusters_avg_population", round6(r.stats.average_population)},
        {"clusters_max_population", r.stats.max_population},
        {"clusters_min_population", r.stats.min_population},
        {"clustered_strains", r.stats.clustered_strains},
        {"isolated_strains", r.stats.isolated_strains},
    };
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace strainscope
