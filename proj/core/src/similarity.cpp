#include <ncut/similarity.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncut {

namespace {

void validate_kernel(const KernelSpec& kernel) {
  switch (kernel.kind) {
    case KernelKind::FixedSigma:
      if (!(kernel.sigma > 0.0))
        throw std::invalid_argument("kernel: sigma must be positive");
      break;
    case KernelKind::SelfTuned:
      if (kernel.K < 1) throw std::invalid_argument("kernel: K must be >= 1");
      break;
    case KernelKind::PsdSelfTuned:
      if (kernel.K < 1) throw std::invalid_argument("kernel: K must be >= 1");
      if (!(kernel.c > 0.0))
        throw std::invalid_argument("kernel: c must be positive");
      break;
  }
}

}  // namespace

KernelSpec KernelSpec::fixed(double sigma) {
  KernelSpec s;
  s.kind = KernelKind::FixedSigma;
  s.sigma = sigma;
  return s;
}

KernelSpec KernelSpec::self_tuned(int K, ScalingConvention convention) {
  KernelSpec s;
  s.kind = KernelKind::SelfTuned;
  s.K = K;
  s.convention = convention;
  return s;
}

KernelSpec KernelSpec::psd_self_tuned(int K, double c) {
  KernelSpec s;
  s.kind = KernelKind::PsdSelfTuned;
  s.K = K;
  s.c = c;
  return s;
}

ScalingVector local_scales(const DataMatrix& x, int K) {
  const int n = static_cast<int>(x.rows());
  if (n < 2) throw std::invalid_argument("local_scales: need at least 2 points");
  if (K < 1 || K >= n)
    throw std::invalid_argument("local_scales: K must be in [1, n-1]");

  ScalingVector nu;
  nu.values.resize(n);
  double max_d2 = 0.0;
  std::vector<double> d2(n - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = (x.row(i) - x.row(j)).squaredNorm();
      d2[m++] = d;
      max_d2 = std::max(max_d2, d);
    }
    std::nth_element(d2.begin(), d2.begin() + (K - 1), d2.end());
    nu.values[i] = std::sqrt(d2[K - 1]);
  }
  const double floor = 1e-8 * std::sqrt(max_d2);
  for (int i = 0; i < n; ++i) nu.values[i] = std::max(nu.values[i], floor);
  return nu;
}

double kernel_entry(const DataMatrix& x, const ScalingVector& scales,
                    const KernelSpec& kernel, int i, int j) {
  const double d2 = (x.row(i) - x.row(j)).squaredNorm();
  if (d2 == 0.0) return 1.0;
  switch (kernel.kind) {
    case KernelKind::FixedSigma:
      return std::exp(-d2 / (kernel.sigma * kernel.sigma));
    case KernelKind::SelfTuned: {
      double denom = scales.values[i] * scales.values[j];
      if (kernel.convention == ScalingConvention::ProductSquared)
        denom *= denom;
      return std::exp(-d2 / denom);
    }
    case KernelKind::PsdSelfTuned: {
      double u2 = (x.row(i) / scales.values[i] - x.row(j) / scales.values[j])
                      .squaredNorm();
      return std::exp(-u2 / kernel.c);
    }
  }
  throw std::logic_error("kernel_entry: unknown kernel kind");
}

DenseSymMatrix build_similarity(const DataMatrix& x, const KernelSpec& kernel) {
  const int n = static_cast<int>(x.rows());
  if (n < 2)
    throw std::invalid_argument("build_similarity: need at least 2 points");
  if (!x.allFinite())
    throw std::invalid_argument("build_similarity: non-finite data values");
  validate_kernel(kernel);

  ScalingVector nu;
  if (kernel.kind != KernelKind::FixedSigma) nu = local_scales(x, kernel.K);

  DenseSymMatrix w(n);
  for (int i = 0; i < n; ++i) {
    w.set(i, i, 1.0);
    for (int j = i + 1; j < n; ++j) w.set(i, j, kernel_entry(x, nu, kernel, i, j));
  }
  return w;
}

DenseSymMatrix degree_matrix(const DenseSymMatrix& w) {
  const int n = w.order();
  Eigen::VectorXd d = w.mat().rowwise().sum();
  for (int i = 0; i < n; ++i)
    if (d[i] == 0.0)
      throw std::runtime_error("degree_matrix: zero row sum at vertex " +
                               std::to_string(i));
  return DenseSymMatrix::diagonal(d);
}

DenseSymMatrix degree_matrix(const SparseSymMatrix& w) {
  Eigen::VectorXd d = degree_vector(w);
  for (int i = 0; i < w.order(); ++i)
    if (d[i] == 0.0)
      throw std::runtime_error("degree_matrix: zero row sum at vertex " +
                               std::to_string(i));
  return DenseSymMatrix::diagonal(d);
}

Eigen::VectorXd degree_vector(const SparseSymMatrix& w) {
  Eigen::VectorXd d(w.order());
  for (int i = 0; i < w.order(); ++i) d[i] = w.diagonal()[static_cast<std::size_t>(i)];
  for (const auto& e : w.off_diagonal()) {
    d[e.i] += e.value;
    d[e.j] += e.value;
  }
  return d;
}

DenseSymMatrix normalized_laplacian(const DenseSymMatrix& w) {
  const int n = w.order();
  Eigen::VectorXd d = w.mat().rowwise().sum();
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) {
    if (!(d[i] > 0.0))
      throw std::runtime_error("normalized_laplacian: zero-degree vertex " +
                               std::to_string(i));
    s[i] = 1.0 / std::sqrt(d[i]);
  }
  DenseSymMatrix l(n);
  for (int i = 0; i < n; ++i) {
    l.set(i, i, 1.0 - w(i, i) * s[i] * s[i]);
    for (int j = i + 1; j < n; ++j) l.set(i, j, -w(i, j) * s[i] * s[j]);
  }
  return l;
}

SparseSymMatrix normalized_laplacian(const SparseSymMatrix& w) {
  const int n = w.order();
  Eigen::VectorXd d = degree_vector(w);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) {
    if (!(d[i] > 0.0))
      throw std::runtime_error("normalized_laplacian: zero-degree vertex " +
                               std::to_string(i));
    s[i] = 1.0 / std::sqrt(d[i]);
  }
  SparseSymMatrix l(n);
  for (int i = 0; i < n; ++i)
    l.set_diagonal(i, 1.0 - w.diagonal()[static_cast<std::size_t>(i)] * s[i] * s[i]);
  for (const auto& e : w.off_diagonal())
    l.add_off_diagonal(e.i, e.j, -e.value * s[e.i] * s[e.j]);
  return l;
}

double ncut(const DenseSymMatrix& w, const Assignment& part) {
  const int n = w.order();
  if (static_cast<int>(part.size()) != n)
    throw std::invalid_argument("ncut: partition length mismatch");
  int count1 = 0;
  for (int lab : part) {
    if (lab != 0 && lab != 1)
      throw std::invalid_argument("ncut: labels must be 0 or 1");
    count1 += lab;
  }
  if (count1 == 0 || count1 == n)
    throw std::invalid_argument("ncut: both clusters must be nonempty");

  double cut = 0.0, assoc0 = 0.0, assoc1 = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += w(i, j);
    if (part[i] == 0)
      assoc0 += row;
    else
      assoc1 += row;
    for (int j = i + 1; j < n; ++j)
      if (part[i] != part[j]) cut += w(i, j);
  }
  if (assoc0 == 0.0 || assoc1 == 0.0)
    throw std::runtime_error("ncut: zero association");
  return cut / assoc0 + cut / assoc1;
}

}  // namespace ncut
