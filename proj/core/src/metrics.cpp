#include <ncut/metrics.hpp>

#include <ncut/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ncut {

namespace {

void check_binary(const Assignment& labels, const char* name) {
  for (int v : labels)
    if (v != 0 && v != 1)
      throw std::invalid_argument(std::string(name) + " labels must be 0 or 1");
}

double two_norm(const DenseSymMatrix& m) {
  double lo = sym_eig(m, 1, Which::Smallest).values[0];
  double hi = sym_eig(m, 1, Which::Largest).values[0];
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

double misclustering_rate(const Assignment& ref, const Assignment& test) {
  if (ref.size() != test.size())
    throw std::invalid_argument("assignments must have equal length");
  if (ref.empty()) throw std::invalid_argument("assignments must be nonempty");
  check_binary(ref, "reference");
  check_binary(test, "test");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) diff += ref[i] != test[i];
  std::size_t best = std::min(diff, ref.size() - diff);
  return static_cast<double>(best) / static_cast<double>(ref.size());
}

PerturbationReport perturbation_report(const DenseSymMatrix& exact,
                                       const DenseSymMatrix& perturbed,
                                       const Assignment& ref,
                                       const Assignment& test) {
  if (exact.order() != perturbed.order())
    throw std::invalid_argument("Laplacians must share an order");
  if (exact.order() < 3)
    throw std::invalid_argument("perturbation report needs order >= 3");

  auto base = sym_eig(exact, 3, Which::Smallest);
  auto other = sym_eig(perturbed, 2, Which::Smallest);
  Eigen::VectorXd v = base.vectors.col(1);
  Eigen::VectorXd vt = other.vectors.col(1);

  PerturbationReport rep;
  rep.eigengap = base.values[2] - base.values[1];
  rep.vec_dist = std::min((vt - v).norm(), (vt + v).norm());
  Eigen::MatrixXd diff = exact.mat() - perturbed.mat();
  rep.frob_err = diff.norm();
  rep.spec_err =
      rep.frob_err == 0.0 ? 0.0 : two_norm(DenseSymMatrix::from_matrix(diff));
  rep.rho = misclustering_rate(ref, test);
  return rep;
}

std::string perturbation_csv_row(const PerturbationReport& report) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g",
                report.eigengap, report.vec_dist, report.frob_err,
                report.spec_err, report.rho);
  return buf;
}

ZTestResult two_prop_ztest(long long successes1, long long total1,
                           long long successes2, long long total2,
                           Direction direction) {
  if (total1 < 1 || total2 < 1)
    throw std::invalid_argument("totals must be positive");
  if (successes1 < 0 || successes1 > total1 || successes2 < 0 ||
      successes2 > total2)
    throw std::invalid_argument("successes must lie in [0, total]");

  ZTestResult res;
  res.direction = direction;
  long long pooled_num = successes1 + successes2;
  long long pooled_den = total1 + total2;
  if (pooled_num == 0 || pooled_num == pooled_den) {
    res.z = 0.0;
    res.p_one_tailed = 0.5;
    res.degenerate = true;
    return res;
  }

  double p1 = static_cast<double>(successes1) / static_cast<double>(total1);
  double p2 = static_cast<double>(successes2) / static_cast<double>(total2);
  double pooled = static_cast<double>(pooled_num) / static_cast<double>(pooled_den);
  double se = std::sqrt(pooled * (1.0 - pooled) *
                        (1.0 / static_cast<double>(total1) +
                         1.0 / static_cast<double>(total2)));
  double signed_diff = direction == Direction::Group1Larger ? p1 - p2 : p2 - p1;
  res.z = signed_diff / se;
  res.p_one_tailed = normal_cdf(-res.z);
  res.degenerate = false;
  return res;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / M_SQRT2); }

}  // namespace ncut
