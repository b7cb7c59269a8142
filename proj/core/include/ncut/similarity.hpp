#pragma once

#include <ncut/matrix.hpp>

#include <Eigen/Dense>

#include <vector>

namespace ncut {

/// Data points, one row per point.
using DataMatrix = Eigen::MatrixXd;

/// Cluster labels, one per point (0/1 for two-way partitions).
using Assignment = std::vector<int>;

/// Per-point scaling values (distance units).
struct ScalingVector {
  Eigen::VectorXd values;
};

enum class KernelKind { FixedSigma, SelfTuned, PsdSelfTuned };

/// Denominator convention for the self-tuned kernel: exp(-d^2 / (nu_i nu_j))
/// or exp(-d^2 / (nu_i nu_j)^2).
enum class ScalingConvention { Product, ProductSquared };

/// Gaussian similarity kernel configuration.
struct KernelSpec {
  KernelKind kind = KernelKind::FixedSigma;
  double sigma = 1.0;  // FixedSigma only
  int K = 7;           // neighbor index for the self-tuned kinds
  double c = 1.0;      // PsdSelfTuned only
  ScalingConvention convention = ScalingConvention::Product;

  static KernelSpec fixed(double sigma);
  static KernelSpec self_tuned(
      int K = 7, ScalingConvention convention = ScalingConvention::Product);
  static KernelSpec psd_self_tuned(int K = 7, double c = 1.0);
};

/// Distance from each point to its K-th nearest neighbor (self excluded),
/// floored at 1e-8 times the dataset diameter. Throws std::invalid_argument
/// unless 1 <= K <= n-1.
ScalingVector local_scales(const DataMatrix& x, int K);

/// One similarity entry. `scales` is ignored for fixed-sigma kernels and must
/// come from local_scales(x, kernel.K) otherwise. Coincident points map to 1.
/// Every code path that queries individual entries shares this function, so
/// sampled and full matrices agree bitwise.
double kernel_entry(const DataMatrix& x, const ScalingVector& scales,
                    const KernelSpec& kernel, int i, int j);

/// Full similarity matrix: unit diagonal, bit-symmetric.
DenseSymMatrix build_similarity(const DataMatrix& x, const KernelSpec& kernel);

/// Diagonal matrix of row sums. Throws std::runtime_error on a zero row sum.
DenseSymMatrix degree_matrix(const DenseSymMatrix& w);
DenseSymMatrix degree_matrix(const SparseSymMatrix& w);

/// Row sums of a sparse similarity matrix.
Eigen::VectorXd degree_vector(const SparseSymMatrix& w);

/// Symmetric normalized Laplacian; the sparse overload preserves the input
/// sparsity pattern. Throws std::runtime_error on a zero-degree vertex.
DenseSymMatrix normalized_laplacian(const DenseSymMatrix& w);
SparseSymMatrix normalized_laplacian(const SparseSymMatrix& w);

/// Normalized-cut objective of a two-way partition: the cut weight divided by
/// each side's total association, summed. Labels must be 0/1 with both sides
/// nonempty.
double ncut(const DenseSymMatrix& w, const Assignment& part);

}  // namespace ncut
