// Command-line driver: run experiments, verify guarantees on small
// instances, generate synthetic inputs, precompute RR-set caches.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcsc/coverage.hpp"
#include "mcsc/errors.hpp"
#include "mcsc/experiment.hpp"
#include "mcsc/influence.hpp"
#include "mcsc/io.hpp"
#include "mcsc/verify.hpp"

namespace {

using nlohmann::json;

// Collects flags that were given on the command line as a JSON overlay for
// merge_config, so precedence is defaults < config file < flags.
class FlagOverlay {
 public:
  explicit FlagOverlay(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& flag, const std::string& key,
           const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(flag, *holder, help);
    apply_.push_back([opt, holder, key](json& doc) {
      if (opt->count() > 0) set(doc, key, *holder);
    });
  }

  json collect() const {
    json doc = json::object();
    for (const auto& f : apply_) f(doc);
    return doc;
  }

 private:
  template <typename T>
  static void set(json& doc, const std::string& key, const T& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      doc[key] = value;
    } else {
      doc[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
  }

  CLI::App* app_;
  std::vector<std::function<void(json&)>> apply_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mcsc::ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw mcsc::ConfigError("config file " + path + ": " + e.what());
  }
}

void add_experiment_flags(FlagOverlay& f) {
  f.add<std::string>("--source", "source",
                     "coverage_file | coverage_random | snap | random_graph");
  f.add<std::string>("--instance", "instance", "Coverage instance JSON");
  f.add<std::size_t>("--coverage-n", "coverage.n", "Random coverage: elements");
  f.add<std::size_t>("--coverage-m", "coverage.m", "Random coverage: items");
  f.add<double>("--coverage-density", "coverage.density",
                "Random coverage: P(element covers item)");
  f.add<double>("--coverage-cost-spread", "coverage.cost_spread",
                "Random coverage: costs uniform on [1, spread]");
  f.add<double>("--coverage-tau-fraction", "coverage.tau_fraction",
                "Random coverage: tau as a fraction of f(S)");
  f.add<std::uint64_t>("--coverage-seed", "coverage.seed",
                       "Random coverage: seed");
  f.add<std::string>("--graph", "graph", "SNAP edge list");
  f.add<std::size_t>("--vertices", "vertices", "Random graph: vertex count");
  f.add<double>("--mean-out-degree", "mean_out_degree",
                "Random graph: mean out-degree");
  f.add<std::uint64_t>("--graph-seed", "graph_seed", "Random graph: seed");
  f.add<std::string>("--graph-model", "graph_model",
                     "Random graph: uniform | power_law");
  f.add<double>("--power-law-exponent", "power_law_exponent",
                "Random graph: degree exponent for power_law");
  f.add<double>("--p", "p", "Edge propagation probability");
  f.add<std::size_t>("--rr-samples", "rr_samples", "Number of RR sets");
  f.add<std::uint64_t>("--rr-seed", "rr_seed", "RR sampling seed");
  f.add<std::string>("--rr-cache", "rr_cache", "RR-set cache file");
  f.add<double>("--cost-sigma", "cost_sigma", "Degree-noise cost sigma");
  f.add<std::uint64_t>("--cost-seed", "cost_seed", "Degree-noise cost seed");
  f.add<double>("--tau", "tau", "Absolute threshold");
  f.add<double>("--tau-fraction", "tau_fraction",
                "Threshold as a fraction of f(V) (graph sources)");
  f.add<std::string>("--algorithm", "algorithm", "greedy | easc | pom");
  f.add<double>("--epsilon", "epsilon", "Feasibility slack epsilon");
  f.add<std::string>("--delta", "delta", "Bin ratio delta, or 'auto'");
  f.add<std::uint64_t>("--iterations", "iterations", "Iterations per run");
  f.add<std::size_t>("--repetitions", "repetitions", "Number of runs");
  f.add<std::vector<std::uint64_t>>("--seeds", "seeds", "One seed per run");
  f.add<std::uint64_t>("--trace-stride", "trace_stride",
                       "Iterations between trace rows");
  f.add<std::string>("--output", "output", "Output directory");
  f.add<unsigned>("--workers", "workers", "Worker threads (0: all cores)");
}

// --delta arrives as a string; turn numeric values into numbers.
json fix_delta(json doc) {
  if (doc.contains("delta") && doc["delta"].is_string()) {
    const std::string text = doc["delta"];
    if (text != "auto") {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        doc["delta"] = v;
      } catch (const std::exception&) {
        throw mcsc::ConfigError("--delta must be a number or 'auto'");
      }
    }
  }
  return doc;
}

int cmd_run(const std::string& config_path, const FlagOverlay& flags) {
  mcsc::ExperimentConfig config;
  if (!config_path.empty()) {
    config = mcsc::merge_config(read_json_file(config_path), config);
  }
  config = mcsc::merge_config(fix_delta(flags.collect()), config);
  const mcsc::ExperimentResult result = mcsc::run_experiment(config);

  std::cout << "algorithm " << mcsc::algorithm_name(result.algorithm)
            << "  n " << result.n << "  tau " << mcsc::format_real(result.tau)
            << "\n";
  std::cout << "greedy  cost " << mcsc::format_real(result.greedy_cost)
            << "  |G| " << result.greedy_size << "  f "
            << mcsc::format_real(result.greedy_f) << "\n";
  if (result.delta) {
    std::cout << "delta " << mcsc::format_real(*result.delta) << "\n";
  }
  for (const auto& run : result.runs) {
    std::cout << "seed " << run.seed << "  final cost "
              << (run.final_cost ? mcsc::format_real(*run.final_cost) : "-")
              << "  max population " << run.max_population_size << "\n";
  }
  for (const auto& file : result.files) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& instance_path,
               const mcsc::RandomCoverageSpec& spec,
               const std::vector<double>& epsilons, std::uint64_t seed,
               double cap_factor) {
  const mcsc::CoverageProblem problem =
      instance_path.empty() ? mcsc::random_coverage_problem(spec)
                            : mcsc::read_coverage_problem(instance_path);
  const mcsc::Instance instance = mcsc::make_instance(problem);
  const mcsc::OptimalSolution opt = mcsc::brute_force_optimum(instance);
  std::cout << "n " << instance.n() << "  tau "
            << mcsc::format_real(instance.tau()) << "  c(A*) "
            << mcsc::format_real(opt.cost) << "\n";
  if (opt.subset.empty()) {
    std::cout << "optimum is the empty set; nothing to verify\n";
    return 0;
  }
  bool ok = true;
  for (double eps : epsilons) {
    const mcsc::GuaranteeReport r =
        mcsc::check_guarantees(instance, eps, seed, cap_factor, opt.cost);
    const double budget = mcsc::bicriteria_factor(eps) * opt.cost;
    std::cout << "eps " << eps << "  budget " << mcsc::format_real(budget)
              << "\n  greedy cost " << mcsc::format_real(r.greedy_cost)
              << " f " << mcsc::format_real(r.greedy_f) << "  "
              << (r.greedy_ok ? "OK" : "VIOLATED") << "\n  easc   delta "
              << mcsc::format_real(r.delta) << " r " << r.final_bin;
    if (r.easc_iterations) {
      std::cout << " iterations " << *r.easc_iterations << " cost "
                << mcsc::format_real(r.easc_cost) << " f "
                << mcsc::format_real(r.easc_f);
    } else {
      std::cout << " no cost-effective final entry within "
                << r.easc_iteration_cap << " iterations";
    }
    std::cout << "  " << (r.easc_ok ? "OK" : "VIOLATED") << "\n";
    ok = ok && r.greedy_ok && r.easc_ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum cost submodular cover: greedy, EASC and POM"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  std::string config_path;
  run->add_option("--config", config_path, "JSON experiment config");
  FlagOverlay run_flags(run);
  add_experiment_flags(run_flags);

  // verify
  CLI::App* verify =
      app.add_subcommand("verify", "Check approximation guarantees on a small coverage instance");
  std::string verify_instance;
  mcsc::RandomCoverageSpec verify_spec;
  std::vector<double> verify_eps{0.05, 0.1, 0.25};
  std::uint64_t verify_seed = 1;
  double cap_factor = 10.0;
  verify->add_option("--instance", verify_instance, "Coverage instance JSON");
  verify->add_option("--n", verify_spec.n, "Random instance: elements (<= 24)");
  verify->add_option("--m", verify_spec.m, "Random instance: items");
  verify->add_option("--density", verify_spec.density, "Random instance: density");
  verify->add_option("--cost-spread", verify_spec.cost_spread, "Random instance: cost spread");
  verify->add_option("--tau-fraction", verify_spec.tau_fraction, "Random instance: tau fraction");
  verify->add_option("--instance-seed", verify_spec.seed, "Random instance: seed");
  verify->add_option("--epsilon", verify_eps, "Epsilon values to check");
  verify->add_option("--seed", verify_seed, "EASC seed");
  verify->add_option("--cap-factor", cap_factor,
                     "EASC iteration cap as a multiple of the expected bound");

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Generate synthetic inputs");
  gen->require_subcommand(1);
  CLI::App* gen_cov = gen->add_subcommand("coverage", "Random coverage instance JSON");
  mcsc::RandomCoverageSpec gen_spec;
  std::string gen_out;
  gen_cov->add_option("--n", gen_spec.n, "Elements");
  gen_cov->add_option("--m", gen_spec.m, "Items");
  gen_cov->add_option("--density", gen_spec.density, "P(element covers item)");
  gen_cov->add_option("--cost-spread", gen_spec.cost_spread, "Costs uniform on [1, spread]");
  gen_cov->add_option("--tau-fraction", gen_spec.tau_fraction, "tau / f(S)");
  gen_cov->add_option("--seed", gen_spec.seed, "Seed");
  gen_cov->add_option("--out", gen_out, "Output path")->required();
  CLI::App* gen_graph = gen->add_subcommand("graph", "Random directed graph as a SNAP edge list");
  std::size_t graph_vertices = 2000;
  double graph_degree = 10.0;
  std::uint64_t graph_seed = 1;
  std::string graph_out;
  std::string graph_model = "uniform";
  double graph_exponent = 2.5;
  gen_graph->add_option("--vertices", graph_vertices, "Vertex count");
  gen_graph->add_option("--mean-out-degree", graph_degree, "Mean out-degree");
  gen_graph->add_option("--graph-model", graph_model, "uniform | power_law")
      ->check(CLI::IsMember({"uniform", "power_law"}));
  gen_graph->add_option("--power-law-exponent", graph_exponent,
                        "Degree exponent for power_law");
  gen_graph->add_option("--seed", graph_seed, "Seed");
  gen_graph->add_option("--out", graph_out, "Output path")->required();

  // rrcache
  CLI::App* rrcache = app.add_subcommand("rrcache", "Precompute an RR-set cache file");
  std::string rr_config_path;
  rrcache->add_option("--config", rr_config_path, "JSON experiment config");
  FlagOverlay rr_flags(rrcache);
  add_experiment_flags(rr_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, run_flags);
    if (*verify) {
      return cmd_verify(verify_instance, verify_spec, verify_eps, verify_seed,
                        cap_factor);
    }
    if (*gen_cov) {
      mcsc::write_coverage_problem(gen_out, mcsc::random_coverage_problem(gen_spec));
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
    if (*gen_graph) {
      const mcsc::DirectedGraph g =
          mcsc::random_graph(graph_vertices, graph_degree, 1.0, graph_seed,
                             graph_model == "power_law"
                                 ? mcsc::GraphModel::kPowerLaw
                                 : mcsc::GraphModel::kUniform,
                             graph_exponent);
      std::ofstream out(graph_out, std::ios::binary);
      if (!out) throw mcsc::Error("cannot write " + graph_out);
      out << "# random directed graph: " << g.vertex_count() << " vertices, "
          << g.edge_count() << " edges\n";
      for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
      std::cout << "wrote " << graph_out << "\n";
      return 0;
    }
    if (*rrcache) {
      mcsc::ExperimentConfig config;
      if (!rr_config_path.empty()) {
        config = mcsc::merge_config(read_json_file(rr_config_path), config);
      }
      config = mcsc::merge_config(fix_delta(rr_flags.collect()), config);
      if (config.rr_cache.empty()) {
        throw mcsc::ConfigError("rrcache needs --rr-cache <path>");
      }
      const mcsc::DirectedGraph graph =
          config.source == mcsc::InstanceSource::kSnapGraph
              ? mcsc::load_snap_graph(config.graph_path, config.p).graph
              : mcsc::random_graph(config.vertices, config.mean_out_degree,
                                   config.p, config.graph_seed,
                                   config.graph_model,
                                   config.power_law_exponent);
      const auto index = mcsc::load_or_build_rr_sets(config, graph);
      std::cout << "RR cache " << config.rr_cache.string() << ": "
                << index->sample_count() << " sets over "
                << index->vertex_count() << " vertices\n";
      return 0;
    }
  } catch (const mcsc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
