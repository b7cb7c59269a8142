#include <ncut/datasets.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ncut {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ShapeInfo {
  const char* name;
  int default_n;
  int dim;
  double separation;  // between the zero-noise manifolds at default geometry
  double def_a;
  double def_b;
};

const ShapeInfo& shape_info(Shape shape) {
  static const ShapeInfo table[] = {
      {"gaussian-strips", 200, 2, 1.0, 4.0, 1.0},
      {"half-rings", 373, 2, 0.5, 1.0, 0.5},
      {"concentric-rings", 800, 2, 1.0, 1.0, 2.0},
      {"concentric-spheres", 5000, 3, 1.0, 1.0, 2.0},
      {"tangent-spheres", 10000, 3, 0.2, 1.0, 1.0},  // touching; nominal scale
      {"interlocked-rings", 10000, 3, 1.0, 1.0, 1.0},
  };
  return table[static_cast<int>(shape)];
}

Eigen::RowVector3d unit_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Eigen::RowVector3d p(g(rng), g(rng), g(rng));
    double norm = p.norm();
    if (norm > 1e-12) return p / norm;
  }
}

Eigen::RowVectorXd manifold_point(Shape shape, const Geometry& geo, int label,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (shape) {
    case Shape::GaussianStrips: {
      Eigen::RowVectorXd p(2);
      p << geo.a * unit(rng), label == 0 ? 0.0 : geo.b;
      return p;
    }
    case Shape::HalfRings: {
      double t = kPi * unit(rng);
      Eigen::RowVectorXd p(2);
      if (label == 0)
        p << geo.a * std::cos(t), geo.a * std::sin(t);
      else
        p << geo.a - geo.a * std::cos(t), geo.b - geo.a * std::sin(t);
      return p;
    }
    case Shape::ConcentricRings: {
      double t = 2.0 * kPi * unit(rng);
      double r = label == 0 ? geo.a : geo.b;
      Eigen::RowVectorXd p(2);
      p << r * std::cos(t), r * std::sin(t);
      return p;
    }
    case Shape::ConcentricSpheres: {
      double r = label == 0 ? geo.a : geo.b;
      return r * unit_sphere_point(rng);
    }
    case Shape::TangentSpheres: {
      Eigen::RowVector3d c(label == 0 ? 0.0 : geo.a + geo.b, 0.0, 0.0);
      double r = label == 0 ? geo.a : geo.b;
      return c + r * unit_sphere_point(rng);
    }
    case Shape::InterlockedRings: {
      double t = 2.0 * kPi * unit(rng);
      Eigen::RowVectorXd p(3);
      if (label == 0)
        p << geo.a * std::cos(t), geo.a * std::sin(t), 0.0;
      else
        p << geo.b + geo.a * std::cos(t), 0.0, geo.a * std::sin(t);
      return p;
    }
  }
  throw std::invalid_argument("unknown shape");
}

// Grid estimate of the minimum distance between the two zero-noise curves;
// only the warning threshold depends on it.
double grid_separation(Shape shape, const Geometry& geo) {
  const int steps = 720;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    double t = (shape == Shape::HalfRings ? kPi : 2.0 * kPi) * i / steps;
    Eigen::RowVector3d p0(geo.a * std::cos(t), geo.a * std::sin(t), 0.0);
    for (int j = 0; j < steps; ++j) {
      double s = (shape == Shape::HalfRings ? kPi : 2.0 * kPi) * j / steps;
      Eigen::RowVector3d p1;
      if (shape == Shape::HalfRings)
        p1 << geo.a - geo.a * std::cos(s), geo.b - geo.a * std::sin(s), 0.0;
      else
        p1 << geo.b + geo.a * std::cos(s), 0.0, geo.a * std::sin(s);
      best = std::min(best, (p0 - p1).norm());
    }
  }
  return best;
}

}  // namespace

Geometry resolve_geometry(Shape shape, const Geometry& geometry) {
  const ShapeInfo& info = shape_info(shape);
  Geometry out = geometry;
  if (std::isnan(out.a)) out.a = info.def_a;
  if (std::isnan(out.b)) out.b = info.def_b;
  if (!(out.a > 0.0) || !(out.b > 0.0) || !std::isfinite(out.a) ||
      !std::isfinite(out.b))
    throw std::invalid_argument("geometry values must be positive reals");
  if ((shape == Shape::ConcentricRings || shape == Shape::ConcentricSpheres) &&
      !(out.a < out.b))
    throw std::invalid_argument("concentric shapes need inner radius < outer");
  return out;
}

double cluster_separation(Shape shape, const Geometry& resolved) {
  const ShapeInfo& info = shape_info(shape);
  if (resolved.a == info.def_a && resolved.b == info.def_b)
    return info.separation;
  switch (shape) {
    case Shape::GaussianStrips:
      return resolved.b;
    case Shape::ConcentricRings:
    case Shape::ConcentricSpheres:
      return resolved.b - resolved.a;
    case Shape::TangentSpheres:
      return 0.2 * std::min(resolved.a, resolved.b);  // nominal neck scale
    case Shape::HalfRings:
    case Shape::InterlockedRings:
      return grid_separation(shape, resolved);
  }
  throw std::invalid_argument("unknown shape");
}

int default_size(Shape shape) { return shape_info(shape).default_n; }

std::string shape_name(Shape shape) { return shape_info(shape).name; }

Shape shape_from_string(const std::string& name) {
  static const Shape all[] = {Shape::GaussianStrips,    Shape::HalfRings,
                              Shape::ConcentricRings,   Shape::ConcentricSpheres,
                              Shape::TangentSpheres,    Shape::InterlockedRings};
  for (Shape s : all)
    if (name == shape_info(s).name) return s;
  throw std::invalid_argument("unknown shape '" + name + "'");
}

Dataset gen_synthetic(const ShapeSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("need at least 4 points");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise))
    throw std::invalid_argument("noise must be a nonnegative real");
  const ShapeInfo& info = shape_info(spec.shape);
  const Geometry geo = resolve_geometry(spec.shape, spec.geometry);
  const double separation = cluster_separation(spec.shape, geo);
  if (spec.noise > separation / 4.0)
    std::fprintf(stderr,
                 "warning: noise %g may blur the %s clusters (separation %g)\n",
                 spec.noise, info.name, separation);

  int n0 = (spec.n + 1) / 2;
  Dataset out;
  out.x.resize(spec.n, info.dim);
  out.labels.assign(spec.n, 0);
  out.columns.reserve(info.dim);
  for (int j = 0; j < info.dim; ++j)
    out.columns.push_back(std::string(1, static_cast<char>('x' + j)));

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < spec.n; ++i) {
    int label = i < n0 ? 0 : 1;
    Eigen::RowVectorXd p = manifold_point(spec.shape, geo, label, rng);
    for (int j = 0; j < info.dim; ++j) p(j) += spec.noise * g(rng);
    out.x.row(i) = p;
    out.labels[i] = label;
  }
  return out;
}

}  // namespace ncut
