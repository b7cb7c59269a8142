#pragma once

#include <ncut/cluster.hpp>
#include <ncut/matrix.hpp>
#include <ncut/similarity.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ncut {

/// Uniform without-replacement subsample request.
struct SampleSpec {
  double fraction = 0.1;
  std::uint64_t seed = 1;
};

/// Seeded sample of point indices: a shuffle prefix of size
/// max(2, min(n, ceil(fraction*n))). Throws unless 0 < fraction <= 1.
std::vector<int> sample_indices(int n, const SampleSpec& spec);

/// Representative-based approximation: k-means coarsening, exact clustering
/// of the k centroids, labels pulled back through a nearest-centroid table.
Assignment fast_sc(const DataMatrix& x, int k, int T, const KernelSpec& kernel,
                   std::uint64_t seed);

/// Subsample approximation: exact clustering of the sample, remaining points
/// labeled by the majority label of their m nearest sampled neighbors, vote
/// ties resolved by the single nearest one.
Assignment espec(const DataMatrix& x, const SampleSpec& sample, int m,
                 const KernelSpec& kernel);

/// Landmark factorization of a similarity matrix. Rows of wm and v follow
/// the permuted order that lists the landmarks first.
struct NystromFactors {
  std::vector<int> sample;  // landmark indices in sampled order
  DenseSymMatrix w11{1};    // landmark block
  Eigen::MatrixXd wm;       // all-vs-landmark block
  Eigen::MatrixXd u;        // eigenvectors of the corrected landmark block
  Eigen::VectorXd lambda;   // its eigenvalues, ascending
  Eigen::MatrixXd v;        // orthogonalized approximate eigenvectors of W
};

/// Factorization from an explicit similarity matrix and landmark list.
NystromFactors nystrom_factors(const DenseSymMatrix& w,
                               const std::vector<int>& landmarks);

/// Factorization that only evaluates kernel entries against the landmarks.
NystromFactors nystrom_factors(const DataMatrix& x, const SampleSpec& sample,
                               const KernelSpec& kernel);

/// Landmark-based clustering. The kernel must be fixed-sigma or
/// scaled-coordinate so the similarity is positive semidefinite.
Assignment nystrom_sc(const DataMatrix& x, const SampleSpec& sample,
                      const KernelSpec& kernel);

/// Sparse similarity holding b uniformly sampled off-diagonal pair queries
/// (bit-equal to the full matrix entries) and constant diagonal
/// 2b/(n(n-1)).
SparseSymMatrix budget_matrix(const DataMatrix& x, long long b,
                              const KernelSpec& kernel, std::uint64_t seed);

/// Clustering under a pair-query budget: second-smallest eigenvector of the
/// normalized Laplacian of the budget matrix.
Assignment budget_sc(const DataMatrix& x, long long b,
                     const KernelSpec& kernel, std::uint64_t seed);

}  // namespace ncut
