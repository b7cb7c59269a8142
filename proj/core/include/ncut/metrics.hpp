#pragma once

#include <ncut/matrix.hpp>
#include <ncut/similarity.hpp>

#include <string>

namespace ncut {

/// Diagnostics comparing an exact normalized Laplacian and its perturbed
/// counterpart alongside the clusterings they induced.
struct PerturbationReport {
  double eigengap;  ///< third minus second smallest eigenvalue of the exact Laplacian
  double vec_dist;  ///< sign-minimized distance between the second eigenvectors
  double frob_err;  ///< Frobenius norm of the Laplacian difference
  double spec_err;  ///< spectral norm of the Laplacian difference
  double rho;       ///< misclustering rate of the perturbed labels
};

/// Alternative hypothesis for the one-tailed two-proportion test.
enum class Direction { Group1Larger, Group2Larger };

/// Pooled two-proportion z-test outcome.
struct ZTestResult {
  double z;             ///< signed statistic, positive when the data favor the hypothesis
  double p_one_tailed;  ///< upper-tail probability for the stated direction
  Direction direction;
  bool degenerate = false;  ///< pooled proportion was 0 or 1, p fixed at 0.5
};

/// Fraction of points assigned to the wrong cluster, minimized over the two
/// label permutations. Both assignments must be binary and the same length.
double misclustering_rate(const Assignment& ref, const Assignment& test);

/// Builds the perturbation diagnostics for a Laplacian pair and the
/// clusterings derived from them. Matrices must share an order of at least 3.
PerturbationReport perturbation_report(const DenseSymMatrix& exact,
                                       const DenseSymMatrix& perturbed,
                                       const Assignment& ref,
                                       const Assignment& test);

/// Serializes a report as one CSV row in the order
/// eigengap, vec_dist, frob_err, spec_err, rho.
std::string perturbation_csv_row(const PerturbationReport& report);

/// Pooled two-proportion z-test of successes1/total1 against
/// successes2/total2 for the given one-sided alternative.
ZTestResult two_prop_ztest(long long successes1, long long total1,
                           long long successes2, long long total2,
                           Direction direction);

/// Standard normal cumulative distribution function.
double normal_cdf(double z);

}  // namespace ncut
