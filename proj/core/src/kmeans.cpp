#include <ncut/cluster.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace ncut {

namespace {

bool same_row(const DataMatrix& x, int a, int b) {
  for (int c = 0; c < x.cols(); ++c)
    if (x(a, c) != x(b, c)) return false;
  return true;
}

// Seeded shuffle, then prefer points whose values differ from already chosen
// centroids; duplicates fill the remainder when the data has fewer than k
// distinct values.
std::vector<int> seed_centroids(const DataMatrix& x, int k,
                                std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(seed);
  for (int t = n - 1; t > 0; --t) {
    std::uniform_int_distribution<int> pick(0, t);
    std::swap(pool[t], pool[pick(rng)]);
  }
  std::vector<int> chosen;
  std::vector<char> used(n, 0);
  for (int idx : pool) {
    if (static_cast<int>(chosen.size()) == k) break;
    bool dup = false;
    for (int c : chosen)
      if (same_row(x, idx, c)) {
        dup = true;
        break;
      }
    if (!dup) {
      chosen.push_back(idx);
      used[idx] = 1;
    }
  }
  for (int idx : pool) {
    if (static_cast<int>(chosen.size()) == k) break;
    if (!used[idx]) {
      chosen.push_back(idx);
      used[idx] = 1;
    }
  }
  return chosen;
}

}  // namespace

KMeansResult kmeans(const DataMatrix& x, int k, int T, std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  if (n < 1) throw std::invalid_argument("kmeans: empty data");
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must be in [1, n]");
  if (T < 1) throw std::invalid_argument("kmeans: T must be >= 1");

  KMeansResult res;
  res.centroids.resize(k, d);
  auto init = seed_centroids(x, k, seed);
  for (int c = 0; c < k; ++c) res.centroids.row(c) = x.row(init[c]);

  res.labels.assign(n, -1);
  Assignment prev(n, -1);

  for (int t = 0; t < T; ++t) {
    // assignment step; ties go to the lower cluster index
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x.row(i) - res.centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        double dc = (x.row(i) - res.centroids.row(c)).squaredNorm();
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      res.labels[i] = best;
    }
    if (t > 0 && res.labels == prev) break;
    prev = res.labels;

    // mean update; empty clusters jump to the point farthest from them
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, d);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(res.labels[i]) += x.row(i);
      ++counts[res.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        res.centroids.row(c) = sums.row(c) / counts[c];
      } else {
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          double dc = (x.row(i) - res.centroids.row(c)).squaredNorm();
          if (dc > far_d) {
            far_d = dc;
            far = i;
          }
        }
        res.centroids.row(c) = x.row(far);
      }
    }

    double obj = 0.0;
    for (int i = 0; i < n; ++i)
      obj += (x.row(i) - res.centroids.row(res.labels[i])).squaredNorm();
    res.objective_history.push_back(obj);
    res.iterations = t + 1;
  }

  res.objective = res.objective_history.back();
  return res;
}

}  // namespace ncut
