#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcsc/coverage.hpp"
#include "mcsc/influence.hpp"
#include "mcsc/instance.hpp"
#include "mcsc/trace.hpp"

namespace mcsc {

enum class Algorithm { kGreedy, kEasc, kPom };

enum class InstanceSource {
  kCoverageFile,    // instance JSON
  kCoverageRandom,  // random_coverage_problem
  kSnapGraph,       // SNAP edge list + RIS oracle + degree-noise costs
  kRandomGraph,     // random_graph + RIS oracle + degree-noise costs
};

struct ExperimentConfig {
  InstanceSource source = InstanceSource::kCoverageFile;
  std::filesystem::path instance_path;
  RandomCoverageSpec coverage;

  std::filesystem::path graph_path;
  std::size_t vertices = 2000;
  double mean_out_degree = 10.0;
  GraphModel graph_model = GraphModel::kUniform;
  double power_law_exponent = 2.5;
  std::uint64_t graph_seed = 1;
  double p = 0.05;
  std::size_t rr_samples = 100000;
  std::uint64_t rr_seed = 1;
  // Read if present and matching, written otherwise. Empty: no cache.
  std::filesystem::path rr_cache;
  double cost_sigma = 0.5;
  std::uint64_t cost_seed = 1;

  // Graph sources need exactly one of these. For coverage sources tau
  // overrides the instance file's value.
  std::optional<double> tau;
  std::optional<double> tau_fraction;

  Algorithm algorithm = Algorithm::kEasc;
  double epsilon = 0.05;
  // delta_auto picks 1 - c_min / B with B the cost of greedy at eps = 0.
  // easc with neither set also uses the automatic choice.
  std::optional<double> delta;
  bool delta_auto = false;
  std::uint64_t iterations = 10000;
  std::size_t repetitions = 1;
  // Defaults to 1..repetitions.
  std::vector<std::uint64_t> seeds;
  std::uint64_t trace_stride = 100;
  std::filesystem::path output_dir = "out";
  // Concurrent repetitions and RR-set workers. 0: hardware concurrency.
  unsigned workers = 0;
};

// Overlays the keys present in `doc` onto `base`. Throws ConfigError on an
// unknown key or a value of the wrong type.
ExperimentConfig merge_config(const nlohmann::json& doc,
                              ExperimentConfig base = {});

// Throws ConfigError on an inconsistent config.
void validate(const ExperimentConfig& config);

const char* algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

// A built instance together with the data it was built from.
struct PreparedInstance {
  std::shared_ptr<const Instance> instance;
  std::optional<CoverageProblem> coverage;
  std::shared_ptr<const DirectedGraph> graph;
  std::shared_ptr<const RRSetIndex> rr_sets;
};

PreparedInstance prepare_instance(const ExperimentConfig& config);

// RR sets for a graph source, through the cache when configured.
std::shared_ptr<const RRSetIndex> load_or_build_rr_sets(
    const ExperimentConfig& config, const DirectedGraph& graph);

struct RunSummary {
  std::uint64_t seed = 0;
  std::optional<double> final_cost;
  std::optional<double> final_f;
  std::size_t final_population_size = 0;
  std::size_t max_population_size = 0;
  std::uint64_t evaluations = 0;
  std::vector<TraceRow> trace;
};

// Mean over repetitions at one trace checkpoint. Cost columns are set only
// when every repetition had a feasible entry there.
struct AveragedRow {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;
  std::optional<double> mean_best_cost;
  std::optional<double> min_best_cost;
  std::optional<double> max_best_cost;
  double mean_population_size = 0.0;
  std::size_t feasible_runs = 0;
};

struct NormalizedRow {
  double evaluations = 0.0;  // evaluations / (n |G|)
  std::optional<double> cost;  // mean best cost / c(G)
};

struct ExperimentResult {
  Algorithm algorithm = Algorithm::kEasc;
  std::size_t n = 0;
  double tau = 0.0;
  std::optional<double> delta;
  // Greedy with the configured epsilon; the normalization reference.
  double greedy_cost = 0.0;
  double greedy_f = 0.0;
  std::size_t greedy_size = 0;
  std::uint64_t greedy_evaluations = 0;
  // Greedy with eps = 0, when delta was chosen automatically.
  std::optional<double> greedy_bound;
  std::vector<RunSummary> runs;
  std::vector<AveragedRow> averaged;
  std::vector<NormalizedRow> normalized;
  std::vector<std::filesystem::path> files;
};

// Aligns traces row by row; they must share checkpoints.
std::vector<AveragedRow> average_traces(
    const std::vector<std::vector<TraceRow>>& traces);

std::vector<NormalizedRow> normalize_trace(
    const std::vector<AveragedRow>& averaged, std::size_t n,
    std::size_t greedy_size, double greedy_cost);

// Runs the configured algorithm and writes into output_dir:
//   greedy: greedy.csv
//   easc/pom: <alg>_seed<s>.csv per repetition, <alg>_mean.csv and, when
//   the greedy reference is non-empty, <alg>_normalized.csv
// plus summary.json. On failure, files written so far are removed.
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const PreparedInstance& prepared);

}  // namespace mcsc
