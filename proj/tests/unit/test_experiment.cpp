#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcsc/errors.hpp"
#include "mcsc/experiment.hpp"
#include "mcsc/io.hpp"
#include "support.hpp"

using namespace mcsc;
using namespace mcsc::testing;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mcsc_exp_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig coverage_config(const fs::path& out) {
  ExperimentConfig c;
  c.source = InstanceSource::kCoverageRandom;
  c.coverage.n = 14;
  c.coverage.m = 20;
  c.coverage.seed = 5;
  c.iterations = 2000;
  c.trace_stride = 100;
  c.output_dir = out;
  return c;
}

std::size_t count_files(const fs::path& dir, const std::string& suffix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("config merging") {
  const ExperimentConfig c = merge_config(json::parse(R"({
    "source": "random_graph", "vertices": 50, "tau_fraction": 0.2,
    "algorithm": "easc", "delta": "auto", "seeds": [4, 5], "repetitions": 2,
    "coverage": {"n": 3}, "graph_model": "power_law"
  })"));
  CHECK(c.source == InstanceSource::kRandomGraph);
  CHECK(c.vertices == 50);
  CHECK(c.delta_auto);
  CHECK_FALSE(c.delta.has_value());
  CHECK(c.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(c.coverage.n == 3);
  CHECK(c.graph_model == GraphModel::kPowerLaw);

  const ExperimentConfig d = merge_config(json::parse(R"({"delta": 0.7})"), c);
  CHECK(d.delta == 0.7);
  CHECK_FALSE(d.delta_auto);
  CHECK(d.vertices == 50);

  CHECK_THROWS_AS(merge_config(json::parse(R"({"bogus": 1})")), ConfigError);
  CHECK_THROWS_AS(merge_config(json::parse(R"({"vertices": "many"})")),
                  ConfigError);
  CHECK_THROWS_AS(merge_config(json::parse(R"({"algorithm": "sa"})")),
                  ConfigError);
  CHECK_THROWS_AS(merge_config(json::parse("[]")), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c = coverage_config("unused");
  c.algorithm = Algorithm::kPom;
  c.delta_auto = true;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.delta_auto = false;
  CHECK_NOTHROW(validate(c));
  c.repetitions = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.repetitions = 2;
  c.seeds = {1};
  CHECK_THROWS_AS(validate(c), ConfigError);

  ExperimentConfig g;
  g.source = InstanceSource::kRandomGraph;
  CHECK_THROWS_AS(validate(g), ConfigError);
  g.tau = 3.0;
  CHECK_NOTHROW(validate(g));
  g.tau_fraction = 0.1;
  CHECK_THROWS_AS(validate(g), ConfigError);
}

TEST_CASE("delta=auto with pom is rejected before anything runs") {
  const fs::path dir = scratch_dir("pom_auto");
  ExperimentConfig c = coverage_config(dir);
  c = merge_config(json::parse(R"({"algorithm": "pom", "delta": "auto"})"), c);
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  CHECK_FALSE(fs::exists(dir / "summary.json"));
}

TEST_CASE("experiment output files") {
  SUBCASE("three repetitions") {
    const fs::path dir = scratch_dir("reps");
    ExperimentConfig c = coverage_config(dir);
    c.repetitions = 3;
    c.seeds = {1, 2, 3};
    const ExperimentResult r = run_experiment(c);
    CHECK(count_files(dir, ".csv") - count_files(dir, "_normalized.csv") == 4);
    CHECK(fs::exists(dir / "easc_seed1.csv"));
    CHECK(fs::exists(dir / "easc_seed3.csv"));
    CHECK(fs::exists(dir / "easc_mean.csv"));
    CHECK(fs::exists(dir / "easc_normalized.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    REQUIRE(r.runs.size() == 3);
    REQUIRE(r.delta.has_value());
    CHECK(r.greedy_bound.has_value());
    CHECK(r.averaged.size() == r.runs[0].trace.size());
    CHECK(slurp(dir / "easc_mean.csv").rfind(
              "iteration,evaluations,mean_best_cost", 0) == 0);
  }
  SUBCASE("greedy writes one CSV with a row per added element") {
    const fs::path dir = scratch_dir("greedy");
    ExperimentConfig c = coverage_config(dir);
    c.algorithm = Algorithm::kGreedy;
    const ExperimentResult r = run_experiment(c);
    CHECK(count_files(dir, ".csv") == 1);
    std::istringstream lines(slurp(dir / "greedy.csv"));
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 1 + 1 + r.greedy_size);
  }
}

TEST_CASE("experiments are byte-identical across reruns") {
  for (Algorithm alg : {Algorithm::kEasc, Algorithm::kPom}) {
    const fs::path a = scratch_dir("rerun_a");
    const fs::path b = scratch_dir("rerun_b");
    ExperimentConfig c = coverage_config(a);
    c.algorithm = alg;
    c.repetitions = 2;
    c.workers = 2;
    run_experiment(c);
    c.output_dir = b;
    c.workers = 1;
    run_experiment(c);
    for (const auto& e : fs::directory_iterator(a)) {
      CAPTURE(e.path().filename().string());
      CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
  }
}

TEST_CASE("graph experiments reuse the RR cache") {
  const fs::path dir = scratch_dir("graph");
  fs::create_directories(dir);
  ExperimentConfig c;
  c.source = InstanceSource::kRandomGraph;
  c.vertices = 80;
  c.mean_out_degree = 3.0;
  c.p = 0.1;
  c.rr_samples = 2000;
  c.rr_cache = dir / "rr.bin";
  c.tau_fraction = 0.2;
  c.algorithm = Algorithm::kPom;
  c.iterations = 500;
  c.output_dir = dir / "out1";
  const ExperimentResult first = run_experiment(c);
  CHECK(fs::exists(c.rr_cache));
  c.output_dir = dir / "out2";
  const ExperimentResult second = run_experiment(c);
  CHECK(first.greedy_cost == second.greedy_cost);
  CHECK(slurp(dir / "out1" / "pom_seed1.csv") ==
        slurp(dir / "out2" / "pom_seed1.csv"));

  c.rr_samples = 2001;
  CHECK_THROWS_AS(run_experiment(c), CacheMismatch);
}

TEST_CASE("averaging and normalization") {
  std::vector<TraceRow> a{{0, 1, std::nullopt, std::nullopt, 1},
                          {10, 11, 4.0, 9.0, 3}};
  std::vector<TraceRow> b{{0, 1, std::nullopt, std::nullopt, 1},
                          {10, 11, 2.0, 9.5, 5}};
  const auto avg = average_traces({a, b});
  REQUIRE(avg.size() == 2);
  CHECK_FALSE(avg[0].mean_best_cost.has_value());
  CHECK(avg[1].mean_best_cost == 3.0);
  CHECK(avg[1].min_best_cost == 2.0);
  CHECK(avg[1].max_best_cost == 4.0);
  CHECK(avg[1].mean_population_size == 4.0);
  CHECK(avg[1].feasible_runs == 2);

  const auto norm = normalize_trace(avg, 5, 2, 6.0);
  CHECK(norm[1].evaluations == doctest::Approx(1.1));
  CHECK(norm[1].cost == doctest::Approx(0.5));

  b.pop_back();
  CHECK_THROWS_AS(average_traces({a, b}), Error);
  CHECK_THROWS_AS(normalize_trace(avg, 5, 0, 6.0), Error);
}
