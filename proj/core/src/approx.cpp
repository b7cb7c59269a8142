#include <ncut/approx.hpp>

#include <ncut/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace ncut {

namespace {

KernelSpec clamp_neighbors(KernelSpec kernel, int size) {
  if (kernel.kind != KernelKind::FixedSigma && kernel.K > size - 1)
    kernel.K = size - 1;
  return kernel;
}

ScalingVector scales_if_needed(const DataMatrix& x, const KernelSpec& kernel) {
  if (kernel.kind == KernelKind::FixedSigma) return {};
  return local_scales(x, kernel.K);
}

// first index of row i in the row-major upper-triangular pair order
long long pair_row_start(long long i, long long n) {
  return i * (n - 1) - i * (i - 1) / 2;
}

std::pair<int, int> unrank_pair(long long ell, long long n) {
  double guess =
      (2.0 * static_cast<double>(n) - 1.0 -
       std::sqrt((2.0 * static_cast<double>(n) - 1.0) *
                     (2.0 * static_cast<double>(n) - 1.0) -
                 8.0 * static_cast<double>(ell))) /
      2.0;
  long long i = std::max<long long>(0, static_cast<long long>(guess));
  while (i + 1 < n && pair_row_start(i + 1, n) <= ell) ++i;
  while (i > 0 && pair_row_start(i, n) > ell) --i;
  long long j = ell - pair_row_start(i, n) + i + 1;
  return {static_cast<int>(i), static_cast<int>(j)};
}

NystromFactors finish_factors(std::vector<int> sample, DenseSymMatrix w11,
                              Eigen::MatrixXd wm) {
  const int m = w11.order();
  const int n = static_cast<int>(wm.rows());

  NystromFactors f;
  f.sample = std::move(sample);
  f.w11 = w11;
  f.wm = std::move(wm);

  Eigen::MatrixXd s11 = psd_inv_sqrt(w11).mat();
  Eigen::MatrixXd w21 = f.wm.bottomRows(n - m);
  Eigen::MatrixXd q =
      w11.mat() + s11 * (w21.transpose() * w21) * s11;
  auto eq = sym_eig(DenseSymMatrix::from_matrix(q), m, Which::Full);

  f.u.resize(m, m);
  f.lambda.resize(m);
  for (int j = 0; j < m; ++j) {
    f.u.col(j) = eq.vectors.col(j);
    f.lambda[j] = eq.values[static_cast<std::size_t>(j)];
  }

  const double cutoff = 1e-12 * std::max(f.lambda[m - 1], 0.0);
  Eigen::MatrixXd b = f.wm * s11 * f.u;
  f.v = Eigen::MatrixXd::Zero(n, m);
  for (int j = 0; j < m; ++j)
    if (f.lambda[j] > cutoff) f.v.col(j) = b.col(j) / std::sqrt(f.lambda[j]);
  return f;
}

}  // namespace

std::vector<int> sample_indices(int n, const SampleSpec& spec) {
  if (n < 2) throw std::invalid_argument("sample_indices: need n >= 2");
  if (!(spec.fraction > 0.0) || spec.fraction > 1.0)
    throw std::invalid_argument("sample_indices: fraction must be in (0, 1]");
  int size = static_cast<int>(std::ceil(spec.fraction * n));
  size = std::max(2, std::min(n, size));

  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(spec.seed);
  for (int t = 0; t < size; ++t) {
    std::uniform_int_distribution<int> pick(t, n - 1);
    std::swap(pool[t], pool[pick(rng)]);
  }
  pool.resize(size);
  return pool;
}

Assignment fast_sc(const DataMatrix& x, int k, int T, const KernelSpec& kernel,
                   std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  if (k < 2 || k > n) throw std::invalid_argument("fast_sc: k must be in [2, n]");

  auto km = kmeans(x, k, T, seed);

  // nearest-centroid correspondence, ties to the lower index
  std::vector<int> table(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = (x.row(i) - km.centroids.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      double dc = (x.row(i) - km.centroids.row(c)).squaredNorm();
      if (dc < best_d) {
        best_d = dc;
        best = c;
      }
    }
    table[i] = best;
  }

  int distinct = 0;
  for (int c = 0; c < k; ++c) {
    bool dup = false;
    for (int p = 0; p < c && !dup; ++p)
      dup = (km.centroids.row(c).array() == km.centroids.row(p).array()).all();
    if (!dup) ++distinct;
  }
  if (distinct < 2)
    throw std::runtime_error("fast_sc: fewer than 2 distinct representatives");

  auto labc = spectral_cluster(km.centroids, clamp_neighbors(kernel, k));
  Assignment out(n);
  for (int i = 0; i < n; ++i) out[i] = labc[table[i]];
  return out;
}

Assignment espec(const DataMatrix& x, const SampleSpec& sample, int m,
                 const KernelSpec& kernel) {
  const int n = static_cast<int>(x.rows());
  auto s = sample_indices(n, sample);
  const int sz = static_cast<int>(s.size());
  if (m < 1 || m > sz)
    throw std::invalid_argument("espec: m must be in [1, sample size]");

  DataMatrix xs(sz, x.cols());
  for (int p = 0; p < sz; ++p) xs.row(p) = x.row(s[p]);
  auto labs = spectral_cluster(xs, clamp_neighbors(kernel, sz));

  Assignment out(n, 0);
  std::vector<char> in_sample(n, 0);
  for (int p = 0; p < sz; ++p) {
    out[s[p]] = labs[p];
    in_sample[s[p]] = 1;
  }

  std::vector<std::tuple<double, int, int>> near(sz);  // (d2, global, pos)
  for (int i = 0; i < n; ++i) {
    if (in_sample[i]) continue;
    for (int p = 0; p < sz; ++p)
      near[p] = {(x.row(i) - x.row(s[p])).squaredNorm(), s[p], p};
    std::sort(near.begin(), near.end());
    int votes = 0;
    for (int t = 0; t < m; ++t) votes += labs[std::get<2>(near[t])];
    if (2 * votes > m)
      out[i] = 1;
    else if (2 * votes < m)
      out[i] = 0;
    else
      out[i] = labs[std::get<2>(near[0])];
  }
  return out;
}

NystromFactors nystrom_factors(const DenseSymMatrix& w,
                               const std::vector<int>& landmarks) {
  const int n = w.order();
  const int m = static_cast<int>(landmarks.size());
  if (m < 2 || m > n)
    throw std::invalid_argument("nystrom_factors: need 2 <= m <= n landmarks");
  std::vector<char> is_landmark(n, 0);
  for (int idx : landmarks) {
    if (idx < 0 || idx >= n || is_landmark[idx])
      throw std::invalid_argument("nystrom_factors: bad landmark list");
    is_landmark[idx] = 1;
  }
  std::vector<int> order = landmarks;
  for (int i = 0; i < n; ++i)
    if (!is_landmark[i]) order.push_back(i);

  DenseSymMatrix w11(m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) w11.set(a, b, w(landmarks[a], landmarks[b]));
  Eigen::MatrixXd wm(n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) wm(r, c) = w(order[r], landmarks[c]);
  return finish_factors(landmarks, w11, wm);
}

NystromFactors nystrom_factors(const DataMatrix& x, const SampleSpec& sample,
                               const KernelSpec& kernel) {
  const int n = static_cast<int>(x.rows());
  auto landmarks = sample_indices(n, sample);
  const int m = static_cast<int>(landmarks.size());

  KernelSpec ks = clamp_neighbors(kernel, n);
  ScalingVector nu = scales_if_needed(x, ks);

  std::vector<char> is_landmark(n, 0);
  for (int idx : landmarks) is_landmark[idx] = 1;
  std::vector<int> order = landmarks;
  for (int i = 0; i < n; ++i)
    if (!is_landmark[i]) order.push_back(i);

  DenseSymMatrix w11(m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      w11.set(a, b, kernel_entry(x, nu, ks, landmarks[a], landmarks[b]));
  Eigen::MatrixXd wm(n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c)
      wm(r, c) = kernel_entry(x, nu, ks, order[r], landmarks[c]);
  return finish_factors(landmarks, w11, wm);
}

Assignment nystrom_sc(const DataMatrix& x, const SampleSpec& sample,
                      const KernelSpec& kernel) {
  if (kernel.kind == KernelKind::SelfTuned)
    throw std::invalid_argument(
        "nystrom_sc: kernel must be fixed-sigma or scaled-coordinate");
  const int n = static_cast<int>(x.rows());
  auto f = nystrom_factors(x, sample, kernel);
  const int m = static_cast<int>(f.sample.size());

  // approximate degrees are the row sums of the reconstructed similarity
  Eigen::VectorXd dhat =
      f.v * (f.lambda.asDiagonal() * (f.v.transpose() * Eigen::VectorXd::Ones(n)));
  for (int i = 0; i < n; ++i)
    if (!(dhat[i] > 0.0))
      throw std::runtime_error("nystrom_sc: nonpositive approximate degree");

  // Gram trick: the normalized similarity is G G^T with
  // G = diag(dhat)^(-1/2) V Lambda^(1/2), so its top eigenvectors come from
  // the small matrix G^T G.
  Eigen::VectorXd dis = dhat.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, m);
  for (int j = 0; j < m; ++j)
    if (f.lambda[j] > 0.0)
      g.col(j) = std::sqrt(f.lambda[j]) * dis.asDiagonal() * f.v.col(j);

  auto eh = sym_eig(DenseSymMatrix::from_matrix(g.transpose() * g), m,
                    Which::Full);
  double th1 = eh.values[static_cast<std::size_t>(m - 1)];
  double th2 = eh.values[static_cast<std::size_t>(m - 2)];
  if (th2 <= 1e-12)
    throw std::runtime_error("nystrom_sc: degenerate approximate spectrum");

  EigenResult er;
  er.values = {1.0 - th1, 1.0 - th2};
  er.vectors.resize(n, 2);
  er.vectors.col(0) = g * eh.vectors.col(m - 1) / std::sqrt(th1);
  er.vectors.col(1) = g * eh.vectors.col(m - 2) / std::sqrt(th2);

  auto labp = split_eigenvector(partition_vector(er, dhat));

  std::vector<char> is_landmark(n, 0);
  for (int idx : f.sample) is_landmark[idx] = 1;
  std::vector<int> order = f.sample;
  for (int i = 0; i < n; ++i)
    if (!is_landmark[i]) order.push_back(i);
  Assignment out(n);
  for (int p = 0; p < n; ++p) out[order[p]] = labp[p];
  return out;
}

SparseSymMatrix budget_matrix(const DataMatrix& x, long long b,
                              const KernelSpec& kernel, std::uint64_t seed) {
  const long long n = x.rows();
  if (n < 2) throw std::invalid_argument("budget_matrix: need n >= 2");
  const long long pairs = n * (n - 1) / 2;
  if (b < 1 || b > pairs)
    throw std::invalid_argument("budget_matrix: budget must be in [1, n(n-1)/2]");

  KernelSpec ks = clamp_neighbors(kernel, static_cast<int>(n));
  ScalingVector nu = scales_if_needed(x, ks);

  // Floyd's without-replacement sample of b linear pair indices
  std::unordered_set<long long> chosen;
  chosen.reserve(static_cast<std::size_t>(b) * 2);
  std::mt19937_64 rng(seed);
  for (long long j = pairs - b; j < pairs; ++j) {
    std::uniform_int_distribution<long long> pick(0, j);
    long long t = pick(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<long long> list(chosen.begin(), chosen.end());
  std::sort(list.begin(), list.end());

  SparseSymMatrix wt(static_cast<int>(n));
  const double diag =
      2.0 * static_cast<double>(b) /
      (static_cast<double>(n) * static_cast<double>(n - 1));
  for (int i = 0; i < n; ++i) wt.set_diagonal(i, diag);
  for (long long ell : list) {
    auto [i, j] = unrank_pair(ell, n);
    wt.add_off_diagonal(i, j, kernel_entry(x, nu, ks, i, j));
  }
  return wt;
}

Assignment budget_sc(const DataMatrix& x, long long b,
                     const KernelSpec& kernel, std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  auto wt = budget_matrix(x, b, kernel, seed);
  Eigen::VectorXd deg = degree_vector(wt);

  EigenResult eig;
  if (wt.structural_nonzeros() >
      0.25 * static_cast<double>(n) * static_cast<double>(n)) {
    auto l = normalized_laplacian(DenseSymMatrix::from_matrix(wt.to_dense()));
    eig = sym_eig(l, 2, Which::Smallest);
  } else {
    auto l = normalized_laplacian(wt);
    eig = sym_eig(l, 2, Which::Smallest, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  return split_eigenvector(partition_vector(eig, deg));
}

}  // namespace ncut
