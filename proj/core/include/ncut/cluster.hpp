#pragma once

#include <ncut/eigen.hpp>
#include <ncut/similarity.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ncut {

struct KMeansResult {
  Assignment labels;
  Eigen::MatrixXd centroids;  // one row per cluster
  double objective = 0.0;
  int iterations = 0;
  std::vector<double> objective_history;  // one entry per completed iteration
};

/// Lloyd iterations from k seeded distinct data points. Distance ties go to
/// the lower cluster index; a cluster that empties is reseeded at the point
/// farthest from its stale centroid. Deterministic in (x, k, T, seed).
KMeansResult kmeans(const DataMatrix& x, int k, int T = 100,
                    std::uint64_t seed = 1);

/// Optimal two-way split of the entries of v (1-D 2-means by scanning sorted
/// cut points). The side with larger values after sign canonicalization gets
/// label 1. Throws std::invalid_argument if v is constant within 1e-12.
Assignment split_eigenvector(const Eigen::VectorXd& v);

/// Direction that separates the two clusters, given the two smallest
/// eigenpairs of a normalized Laplacian and the vertex degrees. Uses the
/// second eigenvector directly; when the second eigenvalue vanishes (two
/// connected components) it instead returns the component of the null space
/// orthogonal to the known trivial direction sqrt(degrees).
Eigen::VectorXd partition_vector(const EigenResult& eig,
                                 const Eigen::VectorXd& degrees);

/// Exact two-way spectral clustering: similarity, normalized Laplacian,
/// second-smallest eigenvector, split.
Assignment spectral_cluster(const DataMatrix& x, const KernelSpec& kernel);

}  // namespace ncut
