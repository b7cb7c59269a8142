#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncut/matrix.hpp"

namespace ncut {

// Thrown when an iterative eigensolve exhausts its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations, double best_residual)
      : std::runtime_error(what), iterations(iterations), best_residual(best_residual) {}

  std::size_t iterations;
  double best_residual;
};

// Thrown by psd_inv_sqrt when an eigenvalue falls below -tol * ||M||_F.
class NotPsdError : public std::runtime_error {
 public:
  explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

enum class Which { Smallest, Largest, Full };

// k eigenpairs with values ascending, orthonormal sign-canonical vectors
// (first component of magnitude > 1e-12 is positive) and per-pair residual
// norms ||Mv - lambda v||_2.
struct EigenResult {
  std::vector<double> values;
  Eigen::MatrixXd vectors;  // n x k, column j pairs with values[j]
  std::vector<double> residuals;
};

// Dense symmetric eigensolver: Householder tridiagonalization followed by
// implicit-shift QL iteration (global cap of 30n sweeps). Small-k requests
// recover vectors by tridiagonal inverse iteration on the QL eigenvalues.
EigenResult sym_eig(const DenseSymMatrix& m, int k, Which which);

// Sparse symmetric eigensolver: Lanczos with full reorthogonalization and
// locking, capped at 300 restarts. Smallest pairs are found as the largest
// pairs of sigma*I - M with sigma a Gershgorin upper bound. `which` must be
// Smallest or Largest.
EigenResult sym_eig(const SparseSymMatrix& m, int k, Which which, std::uint64_t seed = 12345);

// Pseudo inverse square root U diag(f(lambda)) U^T with f(lambda) =
// lambda^(-1/2) for lambda > tol * lambda_max and 0 otherwise. Throws
// NotPsdError when an eigenvalue is below -tol * ||M||_F.
DenseSymMatrix psd_inv_sqrt(const DenseSymMatrix& m, double tol = 1e-12);

// Flips v so its first component of magnitude > 1e-12 is positive.
void canonicalize_sign(Eigen::VectorXd& v);

}  // namespace ncut
