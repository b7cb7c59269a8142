#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <ncut/eigen.hpp>
#include <ncut/matrix.hpp>

using ncut::DenseSymMatrix;
using ncut::EigenResult;
using ncut::SparseSymMatrix;
using ncut::Which;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = u(rng);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

// Independent oracle: determinant of (M - lambda I) by Gaussian elimination
// with partial pivoting.
double char_poly(const Eigen::MatrixXd& m, double lambda) {
  Eigen::MatrixXd a = m;
  int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) a(i, i) -= lambda;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (a(p, c) == 0.0) return 0.0;
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      double f = a(r, c) / a(c, c);
      a.row(r).tail(n - c) -= f * a.row(c).tail(n - c);
    }
  }
  return det;
}

// Roots of det(M - lambda I) by sign-scan plus bisection over the Gershgorin
// interval. Usable only when all eigenvalues are simple, which holds for the
// seeded random matrices below.
std::vector<double> char_poly_roots(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) r += std::abs(m(i, j));
    lo = std::min(lo, m(i, i) - r);
    hi = std::max(hi, m(i, i) + r);
  }
  lo -= 1e-6;
  hi += 1e-6;
  const int steps = 20000;
  std::vector<double> roots;
  double prev_x = lo, prev_f = char_poly(m, lo);
  for (int s = 1; s <= steps; ++s) {
    double x = lo + (hi - lo) * s / steps;
    double f = char_poly(m, x);
    if ((prev_f < 0 && f > 0) || (prev_f > 0 && f < 0)) {
      double a = prev_x, b = x, fa = prev_f;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double fm = char_poly(m, mid);
        if ((fa < 0 && fm < 0) || (fa > 0 && fm > 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = f;
  }
  return roots;
}

void check_result_invariants(const EigenResult& r, const Eigen::MatrixXd& m) {
  int k = static_cast<int>(r.values.size());
  double fro = m.norm();
  for (int j = 0; j + 1 < k; ++j) CHECK(r.values[j] <= r.values[j + 1] + 1e-14);
  for (int j = 0; j < k; ++j) {
    CHECK(std::abs(r.vectors.col(j).norm() - 1.0) <= 1e-10);
    Eigen::VectorXd res = m * r.vectors.col(j) - r.values[j] * r.vectors.col(j);
    CHECK(res.norm() <= 1e-8 * (1.0 + std::abs(r.values[j])) * fro);
    // recomputation may use a different summation order, so allow roundoff slack
    CHECK(std::abs(res.norm() - r.residuals[j]) <= 1e-12 * (1.0 + fro));
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      CHECK(std::abs(r.vectors.col(a).dot(r.vectors.col(b))) <= 1e-8);
}

}  // namespace

TEST_CASE("dense eig: 2x2 block-constant laplacian") {
  DenseSymMatrix l(2);
  l.set(0, 0, 0.5);
  l.set(1, 1, 0.5);
  l.set(0, 1, -0.5);
  auto r = ncut::sym_eig(l, 2, Which::Full);
  REQUIRE(r.values.size() == 2);
  CHECK(r.values[0] == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(1.0));
  double s = 1.0 / std::sqrt(2.0);
  CHECK(r.vectors(0, 0) == doctest::Approx(s));
  CHECK(r.vectors(1, 0) == doctest::Approx(s));
}

TEST_CASE("dense eig: diagonal matrix smallest") {
  DenseSymMatrix m(3);
  m.set(0, 0, 3.0);
  m.set(1, 1, 1.0);
  m.set(2, 2, 2.0);
  auto r = ncut::sym_eig(m, 1, Which::Smallest);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == doctest::Approx(1.0));
  CHECK(std::abs(r.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(r.vectors(1, 0) > 0.0);  // sign convention
}

TEST_CASE("dense eig matches characteristic-polynomial oracle at n=5") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    Eigen::MatrixXd a = random_symmetric(5, seed);
    auto roots = char_poly_roots(a);
    REQUIRE(roots.size() == 5);
    auto r = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 5, Which::Full);
    for (int j = 0; j < 5; ++j) CHECK(r.values[j] == doctest::Approx(roots[j]).epsilon(1e-8));
  }
}

TEST_CASE("dense eig invariants and trace identity on seeded matrices") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int n = 3 + static_cast<int>(seed * 4 % 48);
    Eigen::MatrixXd a = random_symmetric(n, seed * 77 + 1);
    auto r = ncut::sym_eig(DenseSymMatrix::from_matrix(a), n, Which::Full);
    check_result_invariants(r, a);
    double sum = 0.0;
    for (double v : r.values) sum += v;
    CHECK(sum == doctest::Approx(a.trace()).epsilon(1e-8));
  }
}

TEST_CASE("dense eig small-k agrees with full decomposition") {
  Eigen::MatrixXd a = random_symmetric(40, 404);
  auto full = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 40, Which::Full);
  auto lo = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 3, Which::Smallest);
  auto hi = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 3, Which::Largest);
  check_result_invariants(lo, a);
  check_result_invariants(hi, a);
  for (int j = 0; j < 3; ++j) {
    CHECK(lo.values[j] == doctest::Approx(full.values[j]).epsilon(1e-10));
    CHECK(hi.values[j] == doctest::Approx(full.values[37 + j]).epsilon(1e-10));
  }
}

TEST_CASE("dense eig rejects bad k") {
  DenseSymMatrix m(3);
  m.set(0, 0, 1.0);
  CHECK_THROWS_AS(ncut::sym_eig(m, 4, Which::Full), std::invalid_argument);
  CHECK_THROWS_AS(ncut::sym_eig(m, 0, Which::Full), std::invalid_argument);
}

TEST_CASE("dense eig handles repeated eigenvalues") {
  // eigenvalues {0, 0, 3} via a rank-1 laplacian-like structure
  Eigen::MatrixXd a(3, 3);
  a << 1, 1, 1, 1, 1, 1, 1, 1, 1;
  auto r = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 3, Which::Full);
  check_result_invariants(r, a);
  CHECK(r.values[0] == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(r.values[1] == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(r.values[2] == doctest::Approx(3.0));
  auto two = ncut::sym_eig(DenseSymMatrix::from_matrix(a), 2, Which::Smallest);
  check_result_invariants(two, a);
}

TEST_CASE("sparse eig matches dense on seeded sparse matrices") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 20 + trial * 10;
    SparseSymMatrix s(n);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double v = u(rng) + 2.0;
      s.set_diagonal(i, v);
      d(i, i) = v;
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < 3 * n; ++e) {
      int i = pick(rng), j = pick(rng);
      if (i == j || d(i, j) != 0.0) continue;
      double v = u(rng);
      s.add_off_diagonal(i, j, v);
      d(i, j) = v;
      d(j, i) = v;
    }
    auto dense = ncut::sym_eig(DenseSymMatrix::from_matrix(d), n, Which::Full);
    auto small = ncut::sym_eig(s, 3, Which::Smallest);
    auto large = ncut::sym_eig(s, 3, Which::Largest);
    check_result_invariants(small, d);
    check_result_invariants(large, d);
    for (int j = 0; j < 3; ++j) {
      CHECK(small.values[j] == doctest::Approx(dense.values[j]).epsilon(1e-8));
      CHECK(large.values[j] == doctest::Approx(dense.values[n - 3 + j]).epsilon(1e-8));
    }
  }
}

TEST_CASE("sparse eig finds a doubly degenerate smallest eigenvalue") {
  // two disconnected 3-cycles: laplacian-style structure with nullity 2
  int n = 6;
  SparseSymMatrix s(n);
  for (int i = 0; i < n; ++i) s.set_diagonal(i, 2.0);
  auto edge = [&](int i, int j) { s.add_off_diagonal(i, j, -1.0); };
  edge(0, 1);
  edge(1, 2);
  edge(0, 2);
  edge(3, 4);
  edge(4, 5);
  edge(3, 5);
  auto r = ncut::sym_eig(s, 2, Which::Smallest);
  CHECK(std::abs(r.values[0]) <= 1e-10);
  CHECK(std::abs(r.values[1]) <= 1e-10);
  Eigen::MatrixXd d = s.to_dense();
  check_result_invariants(r, d);
}

TEST_CASE("psd_inv_sqrt on identity and diagonal") {
  DenseSymMatrix id(3);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1.0);
  auto r = ncut::psd_inv_sqrt(id);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-12));

  DenseSymMatrix d(2);
  d.set(0, 0, 4.0);
  d.set(1, 1, 9.0);
  auto rd = ncut::psd_inv_sqrt(d);
  CHECK(rd(0, 0) == doctest::Approx(0.5));
  CHECK(rd(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(rd(0, 1) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("psd_inv_sqrt projector identity on seeded PSD matrix") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b(i, j) = u(rng);
  Eigen::MatrixXd a = b.transpose() * b;
  auto s = ncut::psd_inv_sqrt(DenseSymMatrix::from_matrix(a));
  Eigen::MatrixXd p = s.mat() * a * s.mat();
  CHECK((p * p - p).norm() <= 1e-8);
  CHECK((p * a - a).norm() <= 1e-8 * a.norm());
}

TEST_CASE("psd_inv_sqrt rejects indefinite input") {
  DenseSymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(1, 1, -1.0);
  CHECK_THROWS_AS(ncut::psd_inv_sqrt(m), ncut::NotPsdError);
}

TEST_CASE("psd_inv_sqrt treats rank deficiency as pseudo-inversion") {
  // rank-1 PSD: [[1,1],[1,1]] has eigenvalues {0, 2}
  DenseSymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(1, 1, 1.0);
  m.set(0, 1, 1.0);
  auto s = ncut::psd_inv_sqrt(m);
  Eigen::MatrixXd p = s.mat() * m.mat() * s.mat();
  CHECK((p * p - p).norm() <= 1e-10);
  CHECK(p.trace() == doctest::Approx(1.0));  // projector rank 1
}
