#pragma once

#include <ncut/similarity.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ncut {

/// Synthetic benchmark shapes, each producing two clusters.
enum class Shape {
  GaussianStrips,
  HalfRings,
  ConcentricRings,
  ConcentricSpheres,
  TangentSpheres,
  InterlockedRings,
};

/// Shape size constants; NaN fields resolve to the shape's defaults.
/// Interpretation: gaussian-strips a = strip length, b = strip separation;
/// half-rings a = ring radius, b = vertical offset of the lower ring;
/// concentric-rings and concentric-spheres a, b = inner and outer radii;
/// tangent-spheres a, b = the two radii (centers a+b apart);
/// interlocked-rings a = common radius, b = center offset.
struct Geometry {
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
};

/// Fills NaN geometry fields with the shape's documented defaults and
/// validates them (positive, finite, and a < b for the concentric shapes).
Geometry resolve_geometry(Shape shape, const Geometry& geometry);

/// Minimum distance between the two zero-noise cluster manifolds, used to
/// scale the blur warning. Tangent spheres touch, so their value is a nominal
/// neck scale; half-rings and interlocked-rings with custom geometry are
/// estimated on a parameter grid.
double cluster_separation(Shape shape, const Geometry& resolved);

/// Request for one synthetic dataset.
struct ShapeSpec {
  Shape shape = Shape::GaussianStrips;
  int n = 200;         ///< total points, split as evenly as possible
  double noise = 0.1;  ///< standard deviation of the isotropic Gaussian jitter
  std::uint64_t seed = 1;
  Geometry geometry;   ///< NaN fields use the shape defaults
};

/// A data matrix with optional ground-truth labels and column names.
struct Dataset {
  DataMatrix x;
  Assignment labels;                 ///< empty when absent
  std::vector<std::string> columns;  ///< feature names, empty when unnamed
};

/// Benchmark-corpus point count for a shape.
int default_size(Shape shape);

/// Kebab-case identifier used by the CLI and config files.
std::string shape_name(Shape shape);

/// Parses a kebab-case shape identifier; throws on unknown names.
Shape shape_from_string(const std::string& name);

/// Samples points uniformly on the two cluster manifolds of the requested
/// shape, adds Gaussian jitter, and records the generating cluster as label.
/// Output is block ordered: all label-0 rows precede label-1 rows.
Dataset gen_synthetic(const ShapeSpec& spec);

/// Writes a dataset as CSV: header row, feature columns at 17 significant
/// digits, then a final integer `label` column when labels are present.
void emit_csv(const Dataset& data, const std::string& path);

/// Reads a CSV table. When `label_column` is nonempty its values populate
/// labels and the column is excluded from the features (requires a header).
Dataset load_csv(const std::string& path, bool has_header,
                 const std::string& label_column);

/// Survey outcome of one respondent.
enum class Status { Stayer = 0, Mover = 1, Leaver = 2 };

/// One attrition-survey response.
struct AttritionRecord {
  int income_bracket;    ///< ordinal index into income_bracket_names()
  int marital;           ///< 0 never married, 1 married, 2 separated
  int num_children;
  int youngest_age;      ///< -1 exactly when num_children is 0
  int other_dependents;
  int dissatisfaction;   ///< 0 to 3
  Status status;
};

/// Row filters for the attrition encoder.
enum class Subgroup { All, Unmarried, Married, Childless, WithChildren };

/// Parses a subgroup identifier (all, unmarried, married, childless,
/// with-children); throws on unknown names.
Subgroup subgroup_from_string(const std::string& name);

/// Options controlling attrition encoding.
struct EncodeOptions {
  bool include_dummy = true;  ///< append a seeded uniform-[0,1) tiebreak column
  Subgroup subgroup = Subgroup::All;
  bool drop_movers = false;
  std::uint64_t seed = 1;
};

/// Encodes survey records as one numeric row each, after filtering.
/// Labels carry the status codes.
Dataset encode_attrition(const std::vector<AttritionRecord>& records,
                         const EncodeOptions& options);

/// Generates a synthetic survey cohort: a small homogeneous never-married,
/// childless, single-bracket, zero-dissatisfaction subgroup embedded in a
/// heterogeneous majority, with status frequencies echoing the reference
/// cohort. Deterministic under seed; requires n >= 10.
std::vector<AttritionRecord> gen_attrition_standin(int n, std::uint64_t seed);

/// Ordinal position of a household-income bracket name; throws on unknown.
int income_bracket_from_string(const std::string& name);

/// Bracket names in survey order.
const std::vector<std::string>& income_bracket_names();

}  // namespace ncut
