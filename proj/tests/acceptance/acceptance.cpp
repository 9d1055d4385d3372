// Acceptance runner: one PASS/FAIL line per criterion. With no arguments
// every criterion runs; otherwise only the listed numbers (e.g. "1 4 6").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "mcsc/coverage.hpp"
#include "mcsc/easc.hpp"
#include "mcsc/experiment.hpp"
#include "mcsc/greedy.hpp"
#include "mcsc/influence.hpp"
#include "mcsc/io.hpp"
#include "mcsc/pom.hpp"
#include "mcsc/random.hpp"
#include "mcsc/verify.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mcsc;
using namespace mcsc::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr double kEpsilons[] = {0.05, 0.1, 0.25};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

// A seeded coverage instance with n in [lo_n, hi_n]. Sparse covers and tau
// near f(S) keep optima at several elements.
CoverageProblem guarantee_instance(std::uint64_t seed, std::size_t lo_n,
                                   std::size_t hi_n) {
  Rng rng(derive_seed(0xC0FFEE, seed));
  RandomCoverageSpec spec;
  spec.n = lo_n + rng.uniform_index(hi_n - lo_n + 1);
  spec.m = 20 + rng.uniform_index(21);
  spec.density = 0.05 + 0.15 * rng.uniform01();
  spec.cost_spread = 1.5 + 8.5 * rng.uniform01();
  spec.tau_fraction = 0.8 + 0.2 * rng.uniform01();
  spec.seed = rng.next();
  return random_coverage_problem(spec);
}

struct SolvedInstance {
  CoverageProblem problem;
  std::shared_ptr<const Instance> instance;
  double optimal_cost = 0.0;
};

const std::vector<SolvedInstance>& guarantee_instances() {
  static const std::vector<SolvedInstance> cache = [] {
    std::vector<SolvedInstance> out;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      SolvedInstance s;
      s.problem = guarantee_instance(seed, 6, 14);
      s.instance = std::make_shared<const Instance>(make_instance(s.problem));
      s.optimal_cost = brute_force_optimum(*s.instance).cost;
      out.push_back(std::move(s));
    }
    return out;
  }();
  return cache;
}

Outcome criterion_1() {
  std::size_t runs = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string first;
  for (const SolvedInstance& s : guarantee_instances()) {
    for (double eps : kEpsilons) {
      const GreedyResult g = run_greedy(*s.instance, eps);
      ++runs;
      const double budget = bicriteria_factor(eps) * s.optimal_cost;
      const bool ok = g.f_value >= (1.0 - eps) * s.instance->tau() - kSlack &&
                      g.cost <= budget + kSlack;
      if (s.optimal_cost > 0.0) worst = std::max(worst, g.cost / budget);
      if (!ok) {
        ++failures;
        if (first.empty()) first = "  first: n=" + std::to_string(s.problem.n());
      }
    }
  }
  return {failures == 0, std::to_string(runs) + " runs, " +
                             std::to_string(failures) +
                             " violations, max c(A)/bound " + fmt(worst) + first};
}

Outcome criterion_2() {
  std::size_t runs = 0;
  std::size_t failures = 0;
  double worst_ratio = 0.0;
  double worst_iters = 0.0;
  for (std::size_t i = 0; i < guarantee_instances().size(); ++i) {
    const SolvedInstance& s = guarantee_instances()[i];
    for (double eps : kEpsilons) {
      const GuaranteeReport r =
          check_guarantees(*s.instance, eps, derive_seed(2, i), 10.0,
                           s.optimal_cost);
      ++runs;
      if (!r.easc_ok) ++failures;
      if (r.easc_iterations) {
        worst_iters = std::max(
            worst_iters, static_cast<double>(*r.easc_iterations) /
                             iteration_bound(*s.instance, eps));
      }
      if (s.optimal_cost > 0.0) {
        worst_ratio = std::max(
            worst_ratio, r.easc_cost / (bicriteria_factor(eps) * s.optimal_cost));
      }
    }
  }
  return {failures == 0,
          std::to_string(runs) + " runs, " + std::to_string(failures) +
              " violations or timeouts, max c(A)/bound " + fmt(worst_ratio) +
              ", max iterations/bound " + fmt(worst_iters)};
}

Outcome criterion_3() {
  constexpr std::size_t kInstances = 20;
  constexpr std::size_t kSeeds = 30;
  constexpr double kEps = 0.1;
  std::size_t failures = 0;
  double worst_median = 0.0;
  double worst_mean = 0.0;
  for (std::uint64_t i = 0; i < kInstances; ++i) {
    const CoverageProblem p = guarantee_instance(1000 + i, 6, 12);
    const Instance inst = make_instance(p);
    const double opt = brute_force_optimum(inst).cost;
    const double delta = admissible_delta(inst, opt);
    const std::size_t r = final_bin_index(kEps, delta);
    const double bound = iteration_bound_for_bins(inst.n(), r);
    std::vector<double> iters;
    bool timed_out = false;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
      const GuaranteeReport rep =
          check_guarantees(inst, kEps, derive_seed(3000 + i, s), 10.0, opt);
      if (!rep.easc_iterations) {
        timed_out = true;
        break;
      }
      iters.push_back(static_cast<double>(*rep.easc_iterations));
    }
    if (timed_out) {
      ++failures;
      continue;
    }
    std::sort(iters.begin(), iters.end());
    const double median = 0.5 * (iters[kSeeds / 2 - 1] + iters[kSeeds / 2]);
    double mean = 0.0;
    for (double v : iters) mean += v;
    mean /= static_cast<double>(iters.size());
    worst_median = std::max(worst_median, median / bound);
    worst_mean = std::max(worst_mean, mean / bound);
    if (median > bound || mean > 3.0 * bound) ++failures;
  }
  return {failures == 0,
          std::to_string(kInstances) + " instances x " + std::to_string(kSeeds) +
              " seeds, " + std::to_string(failures) +
              " failing, max median/bound " + fmt(worst_median) +
              ", max mean/bound " + fmt(worst_mean)};
}

Outcome criterion_4() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first;
  for (std::uint64_t i = 0; checked < 50; ++i) {
    const CoverageProblem p = guarantee_instance(5000 + i, 5, 10);
    const Instance inst = make_instance(p);
    const double opt = brute_force_optimum(inst).cost;
    if (opt == 0.0) continue;
    ++checked;
    const Violations v = check_lemmas(inst, opt);
    violations += v.size();
    if (!v.empty() && first.empty()) first = "  first: " + v.front();
  }
  return {violations == 0, std::to_string(checked) + " instances, " +
                               std::to_string(violations) + " violations" +
                               first};
}

Outcome criterion_5() {
  Rng rng(55);
  std::size_t configs = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;
  double min_violating_eps = 1.0;
  std::string first;
  while (configs < 1000) {
    const std::size_t n = 2 + rng.uniform_index(49);
    const double spread = std::exp(std::log(100.0) * rng.uniform01());
    std::vector<double> costs(n);
    for (double& c : costs) c = 1.0 + (spread - 1.0) * rng.uniform01();
    const Instance inst(costs, std::make_shared<CardinalityOracle>(n), 1.0);
    const double delta_max = 1.0 - inst.c_min() / inst.total_cost();
    const double eps = 1.0 - rng.uniform01();  // (0, 1]
    const double delta = delta_max * (1.0 - rng.uniform01());
    if (!(eps < 1.0) || !(delta > 0.0)) continue;
    ++configs;
    const std::size_t r = final_bin_index(eps, delta, std::size_t{1} << 40);
    const double bound = bin_count_bound(inst, eps);
    const double excess = static_cast<double>(r + 1) - bound;
    worst_excess = std::max(worst_excess, excess);
    if (excess > kSlack) {
      ++violations;
      min_violating_eps = std::min(min_violating_eps, eps);
      if (first.empty()) {
        first = "  first: n=" + std::to_string(n) + " eps=" + fmt(eps) +
                " delta=" + fmt(delta) + " r+1=" + std::to_string(r + 1) +
                " bound=" + fmt(bound);
      }
    }
  }
  return {violations == 0,
          std::to_string(configs) + " configurations, " +
              std::to_string(violations) + " with r+1 above the bound (max " +
              "excess " + fmt(worst_excess) + " bins, smallest violating eps " +
              fmt(min_violating_eps) + ")" + first};
}

Outcome criterion_6() {
  constexpr std::size_t kGraphs = 50;
  constexpr std::size_t kSamples = 200000;
  Rng rng(66);
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < kGraphs; ++i) {
    const std::size_t v = 3 + rng.uniform_index(6);
    const std::size_t max_edges = std::min<std::size_t>(20, v * (v - 1));
    const std::size_t e = 1 + rng.uniform_index(max_edges);
    const double p = 0.05 + 0.9 * rng.uniform01();
    const DirectedGraph g = random_graph(
        v, static_cast<double>(e) / static_cast<double>(v), p, rng.next());
    const RRSetIndex idx = generate_rr_sets(g, kSamples, rng.next());
    const std::vector<double> exact = exact_singleton_influence(g);
    const double tol = 0.02 * static_cast<double>(v);
    double err = 0.0;
    for (std::size_t x = 0; x < v; ++x) {
      err = std::max(err, std::abs(ris_influence(idx, Subset(v, {x})) - exact[x]));
    }
    const Subset all = Subset::full(v);
    err = std::max(err, std::abs(ris_influence(idx, all) - exact_influence(g, all)));
    worst = std::max(worst, err / static_cast<double>(v));
    if (err > tol) ++failures;
  }
  return {failures == 0, std::to_string(kGraphs) + " graphs, " +
                             std::to_string(failures) +
                             " outside tolerance, max |error|/|V| " + fmt(worst)};
}

std::optional<double> final_mean_cost(const ExperimentResult& r) {
  return r.averaged.back().mean_best_cost;
}

Outcome criterion_7() {
  ExperimentConfig config;
  config.source = InstanceSource::kRandomGraph;
  config.vertices = 2000;
  config.mean_out_degree = 10.0;
  config.graph_seed = 1;
  config.p = 0.05;
  config.rr_samples = 50000;
  config.rr_seed = 1;
  config.cost_sigma = 0.5;
  config.cost_seed = 1;
  config.tau_fraction = 0.3;
  config.epsilon = 0.05;
  config.repetitions = 3;
  config.seeds = {1, 2, 3};
  config.workers = 0;
  const PreparedInstance prepared = prepare_instance(config);

  const GreedyResult greedy =
      run_greedy(*prepared.instance, config.epsilon, prepared.instance->n());
  const std::uint64_t budget =
      5 * prepared.instance->n() * greedy.order.size();
  // Every run spends one evaluation on the empty set.
  config.iterations = budget - 1;
  config.trace_stride = std::max<std::uint64_t>(1, budget / 200);

  const fs::path out = fs::temp_directory_path() / "mcsc_acceptance_c7";
  fs::remove_all(out);

  config.algorithm = Algorithm::kEasc;
  config.delta_auto = true;
  config.output_dir = out / "easc";
  const ExperimentResult easc = run_experiment(config, prepared);

  config.algorithm = Algorithm::kPom;
  config.delta_auto = false;
  config.output_dir = out / "pom";
  const ExperimentResult pom = run_experiment(config, prepared);

  const double g = greedy.cost;
  const auto e = final_mean_cost(easc);
  const auto p = final_mean_cost(pom);
  const bool easc_ok = e && *e <= g;
  const bool pom_ok = p && *p <= g;
  const bool close = e && p && (*e <= *p || *e <= 1.05 * *p);
  std::size_t pom_pop = 0;
  for (const auto& run : pom.runs) pom_pop = std::max(pom_pop, run.max_population_size);
  std::size_t easc_pop = 0;
  for (const auto& run : easc.runs) easc_pop = std::max(easc_pop, run.max_population_size);
  const auto ratio = [&](const std::optional<double>& c) {
    return c ? fmt(*c / g) : std::string("none");
  };
  return {easc_ok && pom_ok && close,
          "c(G)=" + fmt(g, 6) + " |G|=" + std::to_string(greedy.order.size()) +
              " budget=" + std::to_string(budget) +
              " evals; mean final cost / c(G): easc " + ratio(e) + ", pom " +
              ratio(p) + "; easc<=pom*1.05: " + (close ? "yes" : "no") +
              "; max population easc " + std::to_string(easc_pop) + ", pom " +
              std::to_string(pom_pop)};
}

Outcome criterion_8() {
  std::size_t easc_runs = 0;
  std::size_t pom_runs = 0;
  Violations all;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const CoverageProblem p = guarantee_instance(8000 + i, 6, 12);
    const Instance inst = make_instance(p);
    const double opt = brute_force_optimum(inst).cost;
    for (double eps : kEpsilons) {
      EascConfig ec;
      ec.epsilon = eps;
      ec.delta = admissible_delta(inst, opt);
      ec.iterations = 4000;
      ec.seed = derive_seed(i, static_cast<std::uint64_t>(eps * 100));
      ec.trace_stride = 37;
      const Violations v =
          check_easc_invariants(inst, ec, opt > 0.0 ? std::optional(opt)
                                                    : std::nullopt);
      ++easc_runs;
      all.insert(all.end(), v.begin(), v.end());

      PomConfig pc;
      pc.tau_prime = (1.0 - eps) * inst.tau();
      pc.iterations = 4000;
      pc.seed = ec.seed;
      pc.trace_stride = 37;
      const Violations w = check_pom_invariants(inst, pc);
      ++pom_runs;
      all.insert(all.end(), w.begin(), w.end());
    }
  }

  // Influence instance: sampled oracle, automatic delta.
  {
    const DirectedGraph g = random_graph(150, 4.0, 0.1, 8);
    auto idx = std::make_shared<const RRSetIndex>(generate_rr_sets(g, 5000, 8));
    const Instance inst(degree_noise_costs(g, 0.5, 8).costs,
                        std::make_shared<RisInfluence>(idx),
                        0.3 * ris_influence(*idx, Subset::full(150)));
    EascConfig ec;
    ec.epsilon = 0.05;
    ec.delta = choose_delta(inst, run_greedy(inst, 0.0).cost);
    ec.iterations = 20000;
    ec.seed = 8;
    ec.trace_stride = 500;
    const Violations v = check_easc_invariants(inst, ec, std::nullopt);
    ++easc_runs;
    all.insert(all.end(), v.begin(), v.end());
    PomConfig pc;
    pc.tau_prime = 0.95 * inst.tau();
    pc.iterations = 20000;
    pc.seed = 8;
    pc.trace_stride = 500;
    const Violations w = check_pom_invariants(inst, pc);
    ++pom_runs;
    all.insert(all.end(), w.begin(), w.end());
  }

  // End-to-end reruns write byte-identical files.
  std::size_t compared = 0;
  for (Algorithm alg : {Algorithm::kEasc, Algorithm::kPom, Algorithm::kGreedy}) {
    ExperimentConfig c;
    c.source = InstanceSource::kRandomGraph;
    c.vertices = 300;
    c.mean_out_degree = 5.0;
    c.rr_samples = 5000;
    c.tau_fraction = 0.2;
    c.algorithm = alg;
    c.iterations = 3000;
    c.repetitions = 2;
    const fs::path base = fs::temp_directory_path() / "mcsc_acceptance_c8";
    fs::remove_all(base);
    c.output_dir = base / "a";
    run_experiment(c);
    c.output_dir = base / "b";
    run_experiment(c);
    for (const auto& e : fs::directory_iterator(base / "a")) {
      std::ifstream fa(e.path(), std::ios::binary);
      std::ifstream fb(base / "b" / e.path().filename(), std::ios::binary);
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      ++compared;
      if (sa.str() != sb.str()) {
        all.push_back("rerun differs: " + e.path().filename().string());
      }
    }
  }

  std::string detail = std::to_string(easc_runs) + " EASC and " +
                       std::to_string(pom_runs) + " POM instrumented runs, " +
                       std::to_string(compared) + " rerun files compared, " +
                       std::to_string(all.size()) + " violations";
  if (!all.empty()) detail += "  first: " + all.front();
  return {all.empty(), detail};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "greedy bicriteria guarantee", criterion_1},
      {2, "EASC bicriteria guarantee", criterion_2},
      {3, "EASC expected-iterations bound", criterion_3},
      {4, "lemma suite", criterion_4},
      {5, "bin-count bound", criterion_5},
      {6, "RIS matches exact influence", criterion_6},
      {7, "scaled influence experiment", criterion_7},
      {8, "invariant suite", criterion_8},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << c.number << " " << (o.pass ? "PASS" : "FAIL")
              << "  " << c.name << ": " << o.detail << " (" << fmt(secs, 3)
              << " s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
