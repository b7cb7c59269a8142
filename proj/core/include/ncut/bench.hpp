#pragma once

#include <ncut/datasets.hpp>
#include <ncut/similarity.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncut {

/// One clustering method in a benchmark grid.
struct MethodSpec {
  std::string id;  ///< exact | fast | espec | nystrom | budget
  KernelSpec kernel = KernelSpec::self_tuned();
  int kmeans_iterations = 100;  ///< fast: Lloyd iteration cap
  int vote_neighbors = 1;       ///< espec: sample neighbors consulted per point
};

/// A full method x fraction x repetition grid over one dataset.
struct ExperimentConfig {
  std::optional<ShapeSpec> shape;  ///< synthetic dataset, when set
  std::string csv_path;            ///< dataset file, when shape is unset
  std::string label_column = "label";
  std::string dataset_id;  ///< defaults to the shape name or csv stem
  std::vector<MethodSpec> methods;
  std::vector<double> sample_fractions;
  int repetitions = 10;
  std::uint64_t seed = 1;
  bool reference_ground_truth = false;  ///< else exact spectral clustering
  KernelSpec reference_kernel = KernelSpec::self_tuned();
};

/// Outcome of one grid cell.
struct ExperimentRecord {
  std::string dataset;
  std::string method;
  double sample_fraction;
  int rep;
  std::uint64_t seed;
  double wall_seconds;
  double error;            ///< NaN when the cell failed
  std::string diagnostic;  ///< nonempty exactly when the cell failed
};

/// Records plus instrumentation counters.
struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  int reference_evaluations = 0;
};

/// Deterministic per-cell seed: base plus a stable hash of the cell key, so
/// adding methods or fractions never shifts other cells' seeds.
std::uint64_t cell_seed(std::uint64_t base, const std::string& method,
                        double fraction, int rep);

/// Runs one method at a sample fraction. The fraction picks the sample size
/// for espec/nystrom, the centroid count for fast, and the pair budget for
/// budget; exact ignores it.
Assignment run_method(const DataMatrix& x, const MethodSpec& method,
                      double fraction, std::uint64_t seed);

/// Materializes the dataset once, computes the reference labeling once, and
/// times every (method, fraction, repetition) cell. Cell failures are
/// recorded as NaN-error rows with a diagnostic; the grid never aborts.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes records as CSV with header
/// dataset,method,sample_fraction,rep,seed,wall_seconds,error.
void emit_records(const std::vector<ExperimentRecord>& records,
                  std::ostream& out);
void emit_records(const std::vector<ExperimentRecord>& records,
                  const std::string& path);

/// Parses a line-oriented `key = value` config (comma-separated lists,
/// `#` comments, dotted per-method overrides such as `nystrom.sigma`).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace ncut
