#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "strainscope/similarity.hpp"

namespace strainscope {

PcaProjection pca_2d(const std::vector<FamilyProfile>& profiles) {
  if (profiles.size() < 3) throw std::invalid_argument("PCA needs at least three profiles");
  constexpr auto dims = static_cast<Eigen::Index>(kBehaviorCount);
  const auto n = static_cast<Eigen::Index>(profiles.size());

  Eigen::MatrixXd data(n, dims);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < dims; ++j) data(i, j) = profiles[static_cast<std::size_t>(i)].p[static_cast<std::size_t>(j)];
  }
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  const Eigen::MatrixXd covariance = (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) throw std::runtime_error("covariance eigendecomposition failed");

  PcaProjection projection;
  projection.total_variance = covariance.trace();
  // Eigenvalues come back ascending.
  for (int k = 0; k < 2; ++k) {
    const Eigen::Index col = dims - 1 - k;
    Eigen::VectorXd axis = solver.eigenvectors().col(col);
    Eigen::Index largest = 0;
    for (Eigen::Index j = 1; j < dims; ++j) {
      if (std::fabs(axis(j)) > std::fabs(axis(largest))) largest = j;
    }
    if (axis(largest) < 0) axis = -axis;
    projection.explained_variance[k] = std::max(0.0, solver.eigenvalues()(col));
    for (Eigen::Index j = 0; j < dims; ++j) projection.axes[k][static_cast<std::size_t>(j)] = axis(j);
  }

  projection.families.reserve(profiles.size());
  projection.coords.reserve(profiles.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    std::array<double, 2> c{};
    for (int k = 0; k < 2; ++k) {
      double dot = 0.0;
      for (Eigen::Index j = 0; j < dims; ++j) dot += centered(i, j) * projection.axes[k][static_cast<std::size_t>(j)];
      c[k] = dot;
    }
    projection.families.push_back(profiles[static_cast<std::size_t>(i)].family);
    projection.coords.push_back(c);
  }
  return projection;
}

}  // namespace strainscope
