#include "mcsc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "mcsc/easc.hpp"
#include "mcsc/errors.hpp"
#include "mcsc/greedy.hpp"
#include "mcsc/io.hpp"
#include "mcsc/pom.hpp"

namespace mcsc {

namespace {

using nlohmann::json;

InstanceSource parse_source(const std::string& name) {
  if (name == "coverage_file") return InstanceSource::kCoverageFile;
  if (name == "coverage_random") return InstanceSource::kCoverageRandom;
  if (name == "snap") return InstanceSource::kSnapGraph;
  if (name == "random_graph") return InstanceSource::kRandomGraph;
  throw ConfigError("unknown instance source '" + name + "'");
}

template <typename T>
T take(const json& value, const std::string& key) {
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!value.is_number_unsigned()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) throw ConfigError("");
    }
    return value.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

bool is_graph_source(InstanceSource s) {
  return s == InstanceSource::kSnapGraph || s == InstanceSource::kRandomGraph;
}

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kEasc:
      return "easc";
    case Algorithm::kPom:
      return "pom";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "easc") return Algorithm::kEasc;
  if (name == "pom") return Algorithm::kPom;
  throw ConfigError("unknown algorithm '" + name + "'");
}

ExperimentConfig merge_config(const json& doc, ExperimentConfig c) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "source") {
      c.source = parse_source(take<std::string>(value, key));
    } else if (key == "instance") {
      c.instance_path = take<std::string>(value, key);
    } else if (key == "coverage") {
      if (!value.is_object()) throw ConfigError("'coverage' must be an object");
      for (const auto& [k, v] : value.items()) {
        const std::string full = "coverage." + k;
        if (k == "n") c.coverage.n = take<std::size_t>(v, full);
        else if (k == "m") c.coverage.m = take<std::size_t>(v, full);
        else if (k == "density") c.coverage.density = take<double>(v, full);
        else if (k == "cost_spread") c.coverage.cost_spread = take<double>(v, full);
        else if (k == "tau_fraction") c.coverage.tau_fraction = take<double>(v, full);
        else if (k == "seed") c.coverage.seed = take<std::uint64_t>(v, full);
        else throw ConfigError("unknown config key '" + full + "'");
      }
    } else if (key == "graph") {
      c.graph_path = take<std::string>(value, key);
    } else if (key == "vertices") {
      c.vertices = take<std::size_t>(value, key);
    } else if (key == "mean_out_degree") {
      c.mean_out_degree = take<double>(value, key);
    } else if (key == "graph_model") {
      const std::string model = take<std::string>(value, key);
      if (model == "uniform") {
        c.graph_model = GraphModel::kUniform;
      } else if (model == "power_law") {
        c.graph_model = GraphModel::kPowerLaw;
      } else {
        throw ConfigError("unknown graph_model '" + model + "'");
      }
    } else if (key == "power_law_exponent") {
      c.power_law_exponent = take<double>(value, key);
    } else if (key == "graph_seed") {
      c.graph_seed = take<std::uint64_t>(value, key);
    } else if (key == "p") {
      c.p = take<double>(value, key);
    } else if (key == "rr_samples") {
      c.rr_samples = take<std::size_t>(value, key);
    } else if (key == "rr_seed") {
      c.rr_seed = take<std::uint64_t>(value, key);
    } else if (key == "rr_cache") {
      c.rr_cache = take<std::string>(value, key);
    } else if (key == "cost_sigma") {
      c.cost_sigma = take<double>(value, key);
    } else if (key == "cost_seed") {
      c.cost_seed = take<std::uint64_t>(value, key);
    } else if (key == "tau") {
      c.tau = take<double>(value, key);
    } else if (key == "tau_fraction") {
      c.tau_fraction = take<double>(value, key);
    } else if (key == "algorithm") {
      c.algorithm = parse_algorithm(take<std::string>(value, key));
    } else if (key == "epsilon") {
      c.epsilon = take<double>(value, key);
    } else if (key == "delta") {
      if (value.is_string() && value.get<std::string>() == "auto") {
        c.delta.reset();
        c.delta_auto = true;
      } else {
        c.delta = take<double>(value, key);
        c.delta_auto = false;
      }
    } else if (key == "iterations") {
      c.iterations = take<std::uint64_t>(value, key);
    } else if (key == "repetitions") {
      c.repetitions = take<std::size_t>(value, key);
    } else if (key == "seeds") {
      if (!value.is_array()) throw ConfigError("'seeds' must be an array");
      c.seeds.clear();
      for (const json& s : value) c.seeds.push_back(take<std::uint64_t>(s, key));
    } else if (key == "trace_stride") {
      c.trace_stride = take<std::uint64_t>(value, key);
    } else if (key == "output") {
      c.output_dir = take<std::string>(value, key);
    } else if (key == "workers") {
      c.workers = take<unsigned>(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (!c.seeds.empty() && c.seeds.size() != c.repetitions) {
    throw ConfigError("expected " + std::to_string(c.repetitions) +
                      " seeds, got " + std::to_string(c.seeds.size()));
  }
  if (c.trace_stride < 1) throw ConfigError("trace_stride must be >= 1");
  if (c.algorithm == Algorithm::kEasc) {
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
      throw ConfigError("easc needs epsilon in (0, 1)");
    }
    if (c.delta && !(*c.delta > 0.0 && *c.delta < 1.0)) {
      throw ConfigError("delta must lie in (0, 1)");
    }
  } else {
    if (c.delta_auto) {
      throw ConfigError("delta=auto is only valid for easc");
    }
    if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) {
      throw ConfigError("epsilon must lie in [0, 1)");
    }
  }
  switch (c.source) {
    case InstanceSource::kCoverageFile:
      if (c.instance_path.empty()) {
        throw ConfigError("coverage_file source needs an instance path");
      }
      break;
    case InstanceSource::kCoverageRandom:
      break;
    case InstanceSource::kSnapGraph:
      if (c.graph_path.empty()) throw ConfigError("snap source needs a graph path");
      [[fallthrough]];
    case InstanceSource::kRandomGraph:
      if (c.tau.has_value() == c.tau_fraction.has_value()) {
        throw ConfigError("graph sources need exactly one of tau, tau_fraction");
      }
      if (c.rr_samples < 1) throw ConfigError("rr_samples must be >= 1");
      if (!(c.p >= 0.0 && c.p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
      break;
  }
  if (c.tau_fraction && !(*c.tau_fraction >= 0.0 && *c.tau_fraction <= 1.0)) {
    throw ConfigError("tau_fraction must lie in [0, 1]");
  }
}

std::shared_ptr<const RRSetIndex> load_or_build_rr_sets(
    const ExperimentConfig& config, const DirectedGraph& graph) {
  const RRCacheKey key = rr_cache_key(graph, config.rr_samples, config.rr_seed);
  if (!config.rr_cache.empty() && std::filesystem::exists(config.rr_cache)) {
    return std::make_shared<const RRSetIndex>(
        read_rr_cache(config.rr_cache, key));
  }
  auto index = std::make_shared<const RRSetIndex>(generate_rr_sets(
      graph, config.rr_samples, config.rr_seed, worker_count(config.workers)));
  if (!config.rr_cache.empty()) write_rr_cache(config.rr_cache, key, *index);
  return index;
}

PreparedInstance prepare_instance(const ExperimentConfig& config) {
  validate(config);
  PreparedInstance out;
  if (!is_graph_source(config.source)) {
    CoverageProblem problem =
        config.source == InstanceSource::kCoverageFile
            ? read_coverage_problem(config.instance_path)
            : random_coverage_problem(config.coverage);
    if (config.tau) problem.tau = *config.tau;
    out.instance = std::make_shared<const Instance>(make_instance(problem));
    out.coverage = std::move(problem);
    return out;
  }

  DirectedGraph graph =
      config.source == InstanceSource::kSnapGraph
          ? load_snap_graph(config.graph_path, config.p).graph
          : random_graph(config.vertices, config.mean_out_degree, config.p,
                         config.graph_seed, config.graph_model,
                         config.power_law_exponent);
  out.graph = std::make_shared<const DirectedGraph>(std::move(graph));
  out.rr_sets = load_or_build_rr_sets(config, *out.graph);
  auto oracle = std::make_shared<const RisInfluence>(out.rr_sets);
  const double full =
      ris_influence(*out.rr_sets, Subset::full(out.graph->vertex_count()));
  const double tau = config.tau ? *config.tau : *config.tau_fraction * full;
  DegreeNoiseCosts costs =
      degree_noise_costs(*out.graph, config.cost_sigma, config.cost_seed);
  out.instance =
      std::make_shared<const Instance>(std::move(costs.costs), oracle, tau);
  return out;
}

std::vector<AveragedRow> average_traces(
    const std::vector<std::vector<TraceRow>>& traces) {
  std::vector<AveragedRow> out;
  if (traces.empty()) return out;
  const std::size_t rows = traces.front().size();
  for (const auto& t : traces) {
    if (t.size() != rows) {
      throw Error("cannot average traces with different checkpoint counts");
    }
  }
  const double reps = static_cast<double>(traces.size());
  for (std::size_t i = 0; i < rows; ++i) {
    AveragedRow row;
    row.iteration = traces.front()[i].iteration;
    row.evaluations = traces.front()[i].evaluations;
    double sum = 0.0, lo = 0.0, hi = 0.0, pop = 0.0;
    for (const auto& t : traces) {
      const TraceRow& r = t[i];
      if (r.iteration != row.iteration || r.evaluations != row.evaluations) {
        throw Error("cannot average traces with different checkpoints");
      }
      pop += static_cast<double>(r.population_size);
      if (!r.best_feasible_cost) continue;
      const double c = *r.best_feasible_cost;
      lo = row.feasible_runs == 0 ? c : std::min(lo, c);
      hi = row.feasible_runs == 0 ? c : std::max(hi, c);
      sum += c;
      ++row.feasible_runs;
    }
    row.mean_population_size = pop / reps;
    if (row.feasible_runs == traces.size()) {
      row.mean_best_cost = sum / reps;
      row.min_best_cost = lo;
      row.max_best_cost = hi;
    }
    out.push_back(row);
  }
  return out;
}

std::vector<NormalizedRow> normalize_trace(
    const std::vector<AveragedRow>& averaged, std::size_t n,
    std::size_t greedy_size, double greedy_cost) {
  if (greedy_size == 0 || !(greedy_cost > 0.0)) {
    throw Error("normalization needs a non-empty greedy solution");
  }
  const double eval_scale = static_cast<double>(n * greedy_size);
  std::vector<NormalizedRow> out;
  out.reserve(averaged.size());
  for (const AveragedRow& row : averaged) {
    NormalizedRow nr;
    nr.evaluations = static_cast<double>(row.evaluations) / eval_scale;
    if (row.mean_best_cost) nr.cost = *row.mean_best_cost / greedy_cost;
    out.push_back(nr);
  }
  return out;
}

namespace {

// Tracks output files so a failed run can remove what it wrote.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(f, ec);
  }

  std::ofstream open(const std::string& name) {
    std::filesystem::path path = dir_ / name;
    files_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
  }

  std::vector<std::filesystem::path> commit() {
    committed_ = true;
    return files_;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
  bool committed_ = false;
};

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

void write_averaged_csv(std::ostream& out, const std::vector<AveragedRow>& rows) {
  out << "iteration,evaluations,mean_best_cost,min_best_cost,max_best_cost,"
         "mean_population_size,feasible_runs\n";
  for (const AveragedRow& r : rows) {
    out << r.iteration << ',' << r.evaluations << ','
        << optional_real(r.mean_best_cost) << ','
        << optional_real(r.min_best_cost) << ','
        << optional_real(r.max_best_cost) << ','
        << format_real(r.mean_population_size) << ',' << r.feasible_runs
        << '\n';
  }
}

void write_normalized_csv(std::ostream& out,
                          const std::vector<NormalizedRow>& rows) {
  out << "normalized_evaluations,normalized_cost\n";
  for (const NormalizedRow& r : rows) {
    out << format_real(r.evaluations) << ',' << optional_real(r.cost) << '\n';
  }
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json summary_json(const ExperimentConfig& config,
                  const ExperimentResult& result) {
  json doc;
  doc["algorithm"] = algorithm_name(result.algorithm);
  doc["n"] = result.n;
  doc["tau"] = result.tau;
  doc["epsilon"] = config.epsilon;
  doc["delta"] = optional_json(result.delta);
  doc["greedy"] = {{"cost", result.greedy_cost},
                   {"f", result.greedy_f},
                   {"size", result.greedy_size},
                   {"evaluations", result.greedy_evaluations}};
  doc["greedy_bound"] = optional_json(result.greedy_bound);
  json runs = json::array();
  for (const RunSummary& run : result.runs) {
    runs.push_back({{"seed", run.seed},
                    {"final_cost", optional_json(run.final_cost)},
                    {"final_f", optional_json(run.final_f)},
                    {"final_population_size", run.final_population_size},
                    {"max_population_size", run.max_population_size},
                    {"evaluations", run.evaluations}});
  }
  doc["runs"] = runs;
  return doc;
}

RunSummary run_one(const Instance& instance, const ExperimentConfig& config,
                   double delta, std::uint64_t seed) {
  RunSummary run;
  run.seed = seed;
  if (config.algorithm == Algorithm::kEasc) {
    EascConfig ec;
    ec.epsilon = config.epsilon;
    ec.delta = delta;
    ec.iterations = config.iterations;
    ec.seed = seed;
    ec.trace_stride = config.trace_stride;
    EascResult r = run_easc(instance, ec);
    run.final_population_size = r.population.size();
    run.max_population_size = r.population.size();
    run.evaluations = r.evaluations;
    run.trace = std::move(r.trace);
  } else {
    PomConfig pc;
    pc.tau_prime = (1.0 - config.epsilon) * instance.tau();
    pc.iterations = config.iterations;
    pc.seed = seed;
    pc.trace_stride = config.trace_stride;
    PomResult r = run_pom(instance, pc);
    run.final_population_size = r.population.size();
    run.max_population_size = r.max_population_size;
    run.evaluations = r.evaluations;
    run.trace = std::move(r.trace);
  }
  run.final_cost = run.trace.back().best_feasible_cost;
  run.final_f = run.trace.back().best_feasible_f;
  return run;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  return run_experiment(config, prepare_instance(config));
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const PreparedInstance& prepared) {
  validate(config);
  const Instance& instance = *prepared.instance;
  std::filesystem::create_directories(config.output_dir);
  OutputSet outputs(config.output_dir);

  ExperimentResult result;
  result.algorithm = config.algorithm;
  result.n = instance.n();
  result.tau = instance.tau();

  std::vector<TraceRow> greedy_rows;
  const GreedyResult greedy =
      run_greedy(instance, config.epsilon, instance.n(),
                 [&](const TraceRow& row) { greedy_rows.push_back(row); });
  result.greedy_cost = greedy.cost;
  result.greedy_f = greedy.f_value;
  result.greedy_size = greedy.solution.size();
  result.greedy_evaluations = greedy.evaluations;

  if (config.algorithm == Algorithm::kGreedy) {
    auto out = outputs.open("greedy.csv");
    write_trace_csv(out, greedy_rows);
  } else {
    double delta = 0.0;
    if (config.algorithm == Algorithm::kEasc) {
      if (config.delta) {
        delta = *config.delta;
      } else {
        const GreedyResult bound = run_greedy(instance, 0.0, instance.n());
        result.greedy_bound = bound.cost;
        delta = choose_delta(instance, bound.cost);
      }
      result.delta = delta;
    }

    std::vector<std::uint64_t> seeds = config.seeds;
    if (seeds.empty()) {
      for (std::size_t i = 0; i < config.repetitions; ++i) seeds.push_back(i + 1);
    }
    result.runs.resize(seeds.size());
    const unsigned workers = std::min<unsigned>(
        worker_count(config.workers), static_cast<unsigned>(seeds.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(seeds.size());
    auto worker = [&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) {
        try {
          result.runs[i] = run_one(instance, config, delta, seeds[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    const std::string name = algorithm_name(config.algorithm);
    std::vector<std::vector<TraceRow>> traces;
    for (const RunSummary& run : result.runs) {
      auto out = outputs.open(name + "_seed" + std::to_string(run.seed) + ".csv");
      write_trace_csv(out, run.trace);
      traces.push_back(run.trace);
    }
    result.averaged = average_traces(traces);
    {
      auto out = outputs.open(name + "_mean.csv");
      write_averaged_csv(out, result.averaged);
    }
    if (result.greedy_size > 0 && result.greedy_cost > 0.0) {
      result.normalized = normalize_trace(result.averaged, instance.n(),
                                          result.greedy_size,
                                          result.greedy_cost);
      auto out = outputs.open(name + "_normalized.csv");
      write_normalized_csv(out, result.normalized);
    }
  }

  {
    auto out = outputs.open("summary.json");
    out << summary_json(config, result).dump(2) << '\n';
  }
  result.files = outputs.commit();
  return result;
}

}  // namespace mcsc
