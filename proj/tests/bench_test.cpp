#include <doctest.h>

#include <ncut/bench.hpp>

#include <cmath>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace ncut;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  ShapeSpec shape;
  shape.shape = Shape::GaussianStrips;
  shape.n = 40;
  shape.noise = 0.05;
  shape.seed = 2;
  config.shape = shape;
  MethodSpec fast;
  fast.id = "fast";
  config.methods = {fast};
  config.sample_fractions = {0.5};
  config.repetitions = 3;
  config.seed = 9;
  return config;
}

}  // namespace

TEST_CASE("cell seeds are stable, cell-local, and base-shifted") {
  CHECK(cell_seed(0, "fast", 0.1, 0) == 0x11edd76dd67111a9ULL);
  CHECK(cell_seed(0, "espec", 0.5, 3) == 0xb88ef09d14a83b5bULL);
  CHECK(cell_seed(7, "fast", 0.1, 0) == 0x11edd76dd67111b0ULL);

  std::set<std::uint64_t> seen;
  for (const char* m : {"fast", "espec", "nystrom", "budget"})
    for (double f : {0.05, 0.1, 0.5})
      for (int rep = 0; rep < 4; ++rep)
        seen.insert(cell_seed(1, m, f, rep));
  CHECK(seen.size() == 4u * 3u * 4u);
}

TEST_CASE("a grid yields one record per cell with distinct seeds") {
  auto result = run_experiment(tiny_config());
  REQUIRE(result.records.size() == 3);
  CHECK(result.reference_evaluations == 1);
  std::set<std::uint64_t> seeds;
  for (int rep = 0; rep < 3; ++rep) {
    const auto& rec = result.records[rep];
    CHECK(rec.dataset == "gaussian-strips");
    CHECK(rec.method == "fast");
    CHECK(rec.sample_fraction == 0.5);
    CHECK(rec.rep == rep);
    CHECK(rec.wall_seconds >= 0.0);
    CHECK(rec.diagnostic.empty());
    CHECK(rec.error >= 0.0);
    CHECK(rec.error <= 0.5);
    seeds.insert(rec.seed);
  }
  CHECK(seeds.size() == 3);
}

TEST_CASE("replaying a config reproduces the error column exactly") {
  auto config = tiny_config();
  config.methods[0].id = "budget";
  config.sample_fractions = {0.3, 0.6};
  auto first = run_experiment(config);
  auto second = run_experiment(config);
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].error == second.records[i].error);
    CHECK(first.records[i].seed == second.records[i].seed);
  }
}

TEST_CASE("ground-truth reference skips the exact solve") {
  auto config = tiny_config();
  config.reference_ground_truth = true;
  auto result = run_experiment(config);
  CHECK(result.reference_evaluations == 0);
  for (const auto& rec : result.records) CHECK(rec.error <= 0.5);
}

TEST_CASE("a failing cell is recorded without aborting the grid") {
  auto config = tiny_config();
  MethodSpec nystrom;
  nystrom.id = "nystrom";
  nystrom.kernel = KernelSpec::self_tuned();  // rejected: not guaranteed psd
  config.methods.push_back(nystrom);
  auto result = run_experiment(config);
  REQUIRE(result.records.size() == 6);
  for (int rep = 0; rep < 3; ++rep) {
    CHECK(result.records[rep].diagnostic.empty());
    CHECK(std::isfinite(result.records[rep].error));
    CHECK(!result.records[3 + rep].diagnostic.empty());
    CHECK(std::isnan(result.records[3 + rep].error));
  }
}

TEST_CASE("all four approximations recover the rings at a tenth sample") {
  // A tenth of 800 points leaves ~40 per ring, so the sampled outer ring must
  // not open angular gaps wider than the moat: a small pupil and wide moat
  // keep every sampling-based method workable at this rate.
  std::istringstream cfg(R"(
# concentric rings benchmark slice
dataset = concentric-rings
n = 800
noise = 0.1
geometry = 0.5, 2
dataset_seed = 5
methods = fast, espec, nystrom, budget
sample_fractions = 0.1
repetitions = 2
seed = 3
reference = exact-spectral
kernel = self-tuned
K = 7
espec.K = 5
nystrom.kernel = fixed
nystrom.sigma = 0.5
budget.kernel = fixed
budget.sigma = 0.3
)");
  auto config = parse_config(cfg);
  auto result = run_experiment(config);
  REQUIRE(result.records.size() == 8);
  for (const auto& rec : result.records) {
    INFO(rec.method, " rep ", rec.rep, ": ", rec.diagnostic);
    CHECK(rec.diagnostic.empty());
    CHECK(rec.error <= 0.005);
  }
}

TEST_CASE("records serialize with fixed precision and survive reparsing") {
  std::vector<ExperimentRecord> records(3);
  for (int i = 0; i < 3; ++i) {
    records[i].dataset = "half-rings";
    records[i].method = "espec";
    records[i].sample_fraction = 0.1;
    records[i].rep = i;
    records[i].seed = cell_seed(1, "espec", 0.1, i);
    records[i].wall_seconds = 0.25 + i;
    records[i].error = i == 2 ? std::nan("") : 0.0036;
  }
  std::ostringstream out;
  emit_records(records, out);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "dataset,method,sample_fraction,rep,seed,wall_seconds,error");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cellstream(line);
    std::string cell;
    while (std::getline(cellstream, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    CHECK(cells[0] == "half-rings");
    CHECK(cells[1] == "espec");
    CHECK(std::strtod(cells[2].c_str(), nullptr) == 0.1);
    CHECK(std::stoi(cells[3]) == rows);
    CHECK(std::stoull(cells[4]) == records[rows].seed);
    CHECK(cells[6] == (rows == 2 ? "nan" : "0.003600"));
    ++rows;
  }
  CHECK(rows == 3);

  CHECK_THROWS_AS(emit_records({}, std::cout), std::invalid_argument);
}

TEST_CASE("config parsing resolves overrides and rejects junk") {
  std::istringstream good(R"(
dataset = gaussian-strips   # shape by name
noise = 0.08
geometry = 5, 1.25
methods = exact, fast, espec
sample_fractions = 0.2, 0.4
seed = 11
fast.kmeans_iterations = 55
espec.vote_neighbors = 3
espec.kernel = fixed
espec.sigma = 1.5
)");
  auto config = parse_config(good);
  REQUIRE(config.shape.has_value());
  CHECK(config.shape->shape == Shape::GaussianStrips);
  CHECK(config.shape->n == 200);  // defaulted to the corpus size
  CHECK(config.shape->noise == 0.08);
  CHECK(config.shape->geometry.a == 5.0);
  CHECK(config.shape->geometry.b == 1.25);
  CHECK(config.repetitions == 10);
  CHECK(config.seed == 11);
  REQUIRE(config.methods.size() == 3);
  CHECK(config.methods[1].kmeans_iterations == 55);
  CHECK(config.methods[2].vote_neighbors == 3);
  CHECK(config.methods[2].kernel.kind == KernelKind::FixedSigma);
  CHECK(config.methods[2].kernel.sigma == 1.5);
  CHECK(config.methods[0].kernel.kind == KernelKind::SelfTuned);
  CHECK(config.sample_fractions == std::vector<double>{0.2, 0.4});

  auto throws = [](const char* text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_config(in), std::invalid_argument);
  };
  throws("dataset = gaussian-strips\nmethods = warp\nsample_fractions = 0.1\n");
  throws("dataset = gaussian-strips\nmethods = fast\nsample_fractions = 0.1\nbogus = 1\n");
  throws("dataset = gaussian-strips\nmethods = fast\nsample_fractions = 0.1\nespec.vote_neighbors = 2\n");
  throws("dataset = gaussian-strips\nmethods = fast\nsample_fractions = 0.1\nreference = vibes\n");
  throws("methods = fast\nsample_fractions = 0.1\n");
  throws("dataset = gaussian-strips\nmethods = fast\nsample_fractions = 0.1\nno equals here\n");
  throws("dataset = gaussian-strips\nmethods = fast\nsample_fractions = 0.1\ngeometry = 5\n");

  std::istringstream chatty(
      "dataset = gaussian-strips\nmethods = fast\nsample_fractions = 2.0\n");
  auto bad_fraction = parse_config(chatty);
  CHECK_THROWS_AS(run_experiment(bad_fraction), std::invalid_argument);
}
