#include <ncut/cluster.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ncut {

Assignment split_eigenvector(const Eigen::VectorXd& v_in) {
  const int n = static_cast<int>(v_in.size());
  if (n < 2) throw std::invalid_argument("split_eigenvector: need n >= 2");

  const Eigen::VectorXd& v = v_in;
  if (v.maxCoeff() - v.minCoeff() <= 1e-12)
    throw std::invalid_argument("split_eigenvector: constant eigenvector");

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return a < b;
  });

  // prefix sums over the sorted values give each cut's 2-means cost in O(1)
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (int t = 0; t < n; ++t) {
    double val = v[idx[t]];
    s1[t + 1] = s1[t] + val;
    s2[t + 1] = s2[t] + val * val;
  }
  double best = std::numeric_limits<double>::infinity();
  int best_cut = -1;
  for (int c = 1; c < n; ++c) {
    if (v[idx[c - 1]] == v[idx[c]]) continue;  // never separate equal values
    double left = s2[c] - s1[c] * s1[c] / c;
    double right = (s2[n] - s2[c]) -
                   (s1[n] - s1[c]) * (s1[n] - s1[c]) / (n - c);
    double cost = left + right;
    if (cost < best) {
      best = cost;
      best_cut = c;
    }
  }
  if (best_cut < 0)
    throw std::invalid_argument("split_eigenvector: constant eigenvector");

  Assignment labels(n, 0);
  for (int t = best_cut; t < n; ++t) labels[idx[t]] = 1;
  return labels;
}

Eigen::VectorXd partition_vector(const EigenResult& eig,
                                 const Eigen::VectorXd& degrees) {
  if (eig.values.size() < 2 || eig.vectors.cols() < 2)
    throw std::invalid_argument("partition_vector: need two eigenpairs");

  Eigen::VectorXd v;
  if (eig.values[1] > 1e-10) {
    v = eig.vectors.col(1);
  } else {
    // doubly degenerate null space: remove the trivial direction
    Eigen::VectorXd u = degrees.cwiseSqrt();
    u.normalize();
    double a0 = eig.vectors.col(0).dot(u);
    double a1 = eig.vectors.col(1).dot(u);
    v = -a1 * eig.vectors.col(0) + a0 * eig.vectors.col(1);
    double nv = v.norm();
    if (nv <= 1e-8) {
      v = eig.vectors.col(1);  // trivial direction absent after all
    } else {
      v /= nv;
    }
  }
  canonicalize_sign(v);
  return v;
}

Assignment spectral_cluster(const DataMatrix& x, const KernelSpec& kernel) {
  auto w = build_similarity(x, kernel);
  auto l = normalized_laplacian(w);
  Eigen::VectorXd deg = w.mat().rowwise().sum();
  auto eig = sym_eig(l, 2, Which::Smallest);
  return split_eigenvector(partition_vector(eig, deg));
}

}  // namespace ncut
