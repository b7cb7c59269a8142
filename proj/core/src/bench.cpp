#include <ncut/bench.hpp>

#include <ncut/approx.hpp>
#include <ncut/cluster.hpp>
#include <ncut/metrics.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ncut {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& value, const std::string& key) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
  return v;
}

long long parse_int(const std::string& value, const std::string& key) {
  char* end = nullptr;
  long long v = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size())
    throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
  return v;
}

bool known_method(const std::string& id) {
  return id == "exact" || id == "fast" || id == "espec" || id == "nystrom" ||
         id == "budget";
}

// Kernel settings gathered from config text, finalized once per method.
struct KernelConfig {
  std::string kind = "self-tuned";
  double sigma = 1.0;
  int K = 7;
  double c = 1.0;
  std::string convention = "product";

  bool accept(const std::string& key, const std::string& value) {
    if (key == "kernel") kind = value;
    else if (key == "sigma") sigma = parse_real(value, key);
    else if (key == "K") K = static_cast<int>(parse_int(value, key));
    else if (key == "c") c = parse_real(value, key);
    else if (key == "convention") convention = value;
    else return false;
    return true;
  }

  KernelSpec build() const {
    ScalingConvention conv;
    if (convention == "product")
      conv = ScalingConvention::Product;
    else if (convention == "product-squared")
      conv = ScalingConvention::ProductSquared;
    else
      throw std::invalid_argument("unknown scaling convention '" + convention +
                                  "'");
    if (kind == "fixed") return KernelSpec::fixed(sigma);
    if (kind == "self-tuned") return KernelSpec::self_tuned(K, conv);
    if (kind == "psd-self-tuned") return KernelSpec::psd_self_tuned(K, c);
    throw std::invalid_argument("unknown kernel '" + kind + "'");
  }
};

std::string csv_stem(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

std::string format_fraction(double fraction) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", fraction);
  return buf;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, const std::string& method,
                        double fraction, int rep) {
  std::string key = method + "|" + format_fraction(fraction) + "|" +
                    std::to_string(rep);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return base + h;
}

Assignment run_method(const DataMatrix& x, const MethodSpec& method,
                      double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("sample fraction must lie in (0, 1]");
  int n = static_cast<int>(x.rows());
  if (method.id == "exact") return spectral_cluster(x, method.kernel);
  if (method.id == "fast") {
    int k = static_cast<int>(std::ceil(fraction * n));
    k = std::max(2, std::min(k, n));
    return fast_sc(x, k, method.kmeans_iterations, method.kernel, seed);
  }
  if (method.id == "espec")
    return espec(x, SampleSpec{fraction, seed}, method.vote_neighbors,
                 method.kernel);
  if (method.id == "nystrom")
    return nystrom_sc(x, SampleSpec{fraction, seed}, method.kernel);
  if (method.id == "budget") {
    long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    long long b = std::max(1LL, std::llround(fraction * pairs));
    return budget_sc(x, b, method.kernel, seed);
  }
  throw std::invalid_argument("unknown method '" + method.id + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.methods.empty())
    throw std::invalid_argument("config lists no methods");
  if (config.sample_fractions.empty())
    throw std::invalid_argument("config lists no sample fractions");
  if (config.repetitions < 1)
    throw std::invalid_argument("repetitions must be positive");
  for (double f : config.sample_fractions)
    if (!(f > 0.0) || f > 1.0)
      throw std::invalid_argument("sample fractions must lie in (0, 1]");

  Dataset data;
  std::string dataset_id = config.dataset_id;
  if (config.shape) {
    data = gen_synthetic(*config.shape);
    if (dataset_id.empty()) dataset_id = shape_name(config.shape->shape);
  } else {
    if (config.csv_path.empty())
      throw std::invalid_argument("config names neither a shape nor a csv");
    data = load_csv(config.csv_path, true, config.label_column);
    if (dataset_id.empty()) dataset_id = csv_stem(config.csv_path);
  }

  ExperimentResult result;
  Assignment reference;
  if (config.reference_ground_truth) {
    if (data.labels.empty())
      throw std::invalid_argument("ground-truth reference needs labels");
    reference = data.labels;
  } else {
    reference = spectral_cluster(data.x, config.reference_kernel);
    ++result.reference_evaluations;
  }

  for (const auto& method : config.methods) {
    for (double fraction : config.sample_fractions) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        ExperimentRecord rec;
        rec.dataset = dataset_id;
        rec.method = method.id;
        rec.sample_fraction = fraction;
        rec.rep = rep;
        rec.seed = cell_seed(config.seed, method.id, fraction, rep);
        auto t0 = std::chrono::steady_clock::now();
        try {
          Assignment labels = run_method(data.x, method, fraction, rec.seed);
          rec.wall_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
          rec.error = misclustering_rate(reference, labels);
        } catch (const std::exception& e) {
          rec.wall_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
          rec.error = std::numeric_limits<double>::quiet_NaN();
          rec.diagnostic = e.what();
        }
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

void emit_records(const std::vector<ExperimentRecord>& records,
                  std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("no records to emit");
  out << "dataset,method,sample_fraction,rep,seed,wall_seconds,error\n";
  char buf[64];
  for (const auto& rec : records) {
    out << rec.dataset << ',' << rec.method << ','
        << format_fraction(rec.sample_fraction) << ',' << rec.rep << ','
        << rec.seed << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", rec.wall_seconds);
    out << buf << ',';
    if (std::isnan(rec.error)) {
      out << "nan";
    } else {
      std::snprintf(buf, sizeof(buf), "%.6f", rec.error);
      out << buf;
    }
    out << '\n';
  }
}

void emit_records(const std::vector<ExperimentRecord>& records,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  emit_records(records, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::map<std::string, std::string>> overrides;

  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line lacks '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line lacks a key");
    std::size_t dot = key.find('.');
    if (dot != std::string::npos) {
      overrides[key.substr(0, dot)][key.substr(dot + 1)] = value;
    } else {
      scalars[key] = value;
    }
  }

  ExperimentConfig config;
  KernelConfig global_kernel;
  std::vector<std::string> method_ids;
  ShapeSpec shape;
  bool have_shape = false;

  for (const auto& [key, value] : scalars) {
    if (key == "dataset") {
      try {
        shape.shape = shape_from_string(value);
        have_shape = true;
      } catch (const std::invalid_argument&) {
        config.csv_path = value;
      }
    } else if (key == "n") {
      shape.n = static_cast<int>(parse_int(value, key));
    } else if (key == "noise") {
      shape.noise = parse_real(value, key);
    } else if (key == "geometry") {
      auto parts = split_list(value);
      if (parts.size() != 2)
        throw std::invalid_argument("geometry wants two comma-separated values");
      shape.geometry.a = parse_real(parts[0], key);
      shape.geometry.b = parse_real(parts[1], key);
    } else if (key == "dataset_seed") {
      shape.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "label_column") {
      config.label_column = value;
    } else if (key == "dataset_id") {
      config.dataset_id = value;
    } else if (key == "methods") {
      method_ids = split_list(value);
    } else if (key == "sample_fractions") {
      for (const auto& item : split_list(value))
        config.sample_fractions.push_back(parse_real(item, key));
    } else if (key == "repetitions") {
      config.repetitions = static_cast<int>(parse_int(value, key));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "reference") {
      if (value == "ground-truth-labels")
        config.reference_ground_truth = true;
      else if (value == "exact-spectral")
        config.reference_ground_truth = false;
      else
        throw std::invalid_argument("unknown reference '" + value + "'");
    } else if (!global_kernel.accept(key, value)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  if (scalars.find("dataset") == scalars.end())
    throw std::invalid_argument("config must name a dataset");
  if (have_shape) {
    if (scalars.find("n") == scalars.end()) shape.n = default_size(shape.shape);
    config.shape = shape;
  }

  if (method_ids.empty())
    throw std::invalid_argument("config must list methods");
  for (const auto& [prefix, _] : overrides) {
    bool listed = false;
    for (const auto& id : method_ids) listed = listed || id == prefix;
    if (!listed)
      throw std::invalid_argument("override for unlisted method '" + prefix +
                                  "'");
  }

  for (const auto& id : method_ids) {
    if (!known_method(id))
      throw std::invalid_argument("unknown method '" + id + "'");
    MethodSpec method;
    method.id = id;
    KernelConfig kernel = global_kernel;
    auto it = overrides.find(id);
    if (it != overrides.end()) {
      for (const auto& [key, value] : it->second) {
        if (key == "kmeans_iterations")
          method.kmeans_iterations = static_cast<int>(parse_int(value, key));
        else if (key == "vote_neighbors")
          method.vote_neighbors = static_cast<int>(parse_int(value, key));
        else if (!kernel.accept(key, value))
          throw std::invalid_argument("unknown method key '" + id + "." + key +
                                      "'");
      }
    }
    method.kernel = kernel.build();
    config.methods.push_back(std::move(method));
  }

  config.reference_kernel = global_kernel.build();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return parse_config(in);
}

}  // namespace ncut
