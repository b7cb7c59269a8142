#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ncut {

// Dense symmetric matrix. Stores the full square array; construction and
// mutation keep the two triangles bit-equal.
class DenseSymMatrix {
 public:
  explicit DenseSymMatrix(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {
    if (n < 1) throw std::invalid_argument("DenseSymMatrix: order must be >= 1");
  }

  // Symmetrizes as (A + A^T)/2. Throws on non-square input.
  static DenseSymMatrix from_matrix(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("DenseSymMatrix: matrix not square");
    DenseSymMatrix s(static_cast<int>(a.rows()));
    s.m_ = 0.5 * (a + a.transpose());
    return s;
  }

  static DenseSymMatrix diagonal(const Eigen::VectorXd& d) {
    DenseSymMatrix s(static_cast<int>(d.size()));
    s.m_.diagonal() = d;
    return s;
  }

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

  // Sets both (i,j) and (j,i).
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Eigen::MatrixXd& mat() const { return m_; }
  double frobenius_norm() const { return m_.norm(); }

 private:
  Eigen::MatrixXd m_;
};

// Sparse symmetric matrix in upper-triangular coordinate form (i <= j) with an
// explicit diagonal. Off-diagonal entries represent both (i,j) and (j,i).
class SparseSymMatrix {
 public:
  struct Entry {
    int i;
    int j;
    double value;
  };

  explicit SparseSymMatrix(int n) : n_(n), diag_(n, 0.0) {
    if (n < 1) throw std::invalid_argument("SparseSymMatrix: order must be >= 1");
  }

  int order() const { return n_; }

  void set_diagonal(int i, double v) { diag_[static_cast<std::size_t>(i)] = v; }

  // Adds an off-diagonal entry; (i,j) keys must not repeat.
  void add_off_diagonal(int i, int j, double v) {
    if (i == j) throw std::invalid_argument("SparseSymMatrix: use set_diagonal for i == j");
    if (i > j) std::swap(i, j);
    off_.push_back({i, j, v});
  }

  const std::vector<double>& diagonal() const { return diag_; }
  const std::vector<Entry>& off_diagonal() const { return off_; }

  // Structural nonzero count: both mirror images of each off-diagonal entry
  // plus every stored diagonal entry.
  std::size_t structural_nonzeros() const { return 2 * off_.size() + diag_.size(); }

  // y = A x
  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.resize(n_);
    for (int i = 0; i < n_; ++i) y[i] = diag_[static_cast<std::size_t>(i)] * x[i];
    for (const Entry& e : off_) {
      y[e.i] += e.value * x[e.j];
      y[e.j] += e.value * x[e.i];
    }
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double d : diag_) s += d * d;
    for (const Entry& e : off_) s += 2.0 * e.value * e.value;
    return std::sqrt(s);
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) m(i, i) = diag_[static_cast<std::size_t>(i)];
    for (const Entry& e : off_) {
      m(e.i, e.j) = e.value;
      m(e.j, e.i) = e.value;
    }
    return m;
  }

 private:
  int n_;
  std::vector<double> diag_;
  std::vector<Entry> off_;
};

}  // namespace ncut
