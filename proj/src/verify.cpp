#include "mcsc/verify.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "mcsc/easc.hpp"
#include "mcsc/errors.hpp"
#include "mcsc/greedy.hpp"

namespace mcsc {

OptimalSolution brute_force_optimum(const Instance& instance) {
  const std::size_t n = instance.n();
  if (n > kMaxBruteForceN) {
    throw BudgetExceeded("brute force limited to n <= " +
                         std::to_string(kMaxBruteForceN) + ", got " +
                         std::to_string(n));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  bool found = false;
  std::uint64_t best_mask = 0;
  double best_cost = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Subset x = Subset::from_mask(n, mask);
    const double c = instance.cost(x);
    // Ascending masks: an equal cost found later never wins the tie.
    if (found && c >= best_cost) continue;
    if (instance.value(x) >= instance.tau()) {
      found = true;
      best_mask = mask;
      best_cost = c;
    }
  }
  if (!found) throw Infeasible("no subset reaches tau");
  return OptimalSolution{Subset::from_mask(n, best_mask), best_cost, true};
}

}  // namespace mcsc

namespace mcsc {

double bicriteria_factor(double epsilon) {
  return std::log(1.0 / epsilon) + 1.0;
}

double iteration_bound_for_bins(std::size_t n, std::size_t r) {
  return std::numbers::e * static_cast<double>(n) * static_cast<double>(r) *
         static_cast<double>(r + 1);
}

double bin_count_bound(const Instance& instance, double epsilon) {
  return instance.c_max() / instance.c_min() * std::log(1.0 / epsilon) *
             static_cast<double>(instance.n()) +
         1.0;
}

double iteration_bound(const Instance& instance, double epsilon) {
  const double bins = bin_count_bound(instance, epsilon);
  return std::numbers::e * static_cast<double>(instance.n()) * bins * bins;
}

double admissible_delta(const Instance& instance, double optimal_cost) {
  const double upper = 1.0 - instance.c_min() / instance.total_cost();
  const double lower = 1.0 - instance.c_min() / optimal_cost;
  if (!(upper > 0.0)) {
    throw DomainError("no admissible delta: c(S) == c_min");
  }
  if (lower > 0.0) return lower;
  return 0.5 * upper;
}

bool is_cost_effective(const Entry& entry, std::size_t final_bin,
                       double optimal_cost, double epsilon) {
  constexpr double kSlack = 1e-9;
  if (entry.bin == final_bin) {
    return entry.cost <= bicriteria_factor(epsilon) * optimal_cost + kSlack;
  }
  return entry.phi <= optimal_cost + kSlack;
}

GuaranteeReport check_guarantees(const Instance& instance, double epsilon,
                                 std::uint64_t seed, double cap_factor,
                                 std::optional<double> optimal_cost) {
  GuaranteeReport report;
  report.epsilon = epsilon;
  report.optimal_cost =
      optimal_cost ? *optimal_cost : brute_force_optimum(instance).cost;
  const double budget = bicriteria_factor(epsilon) * report.optimal_cost + 1e-9;
  const double target = (1.0 - epsilon) * instance.tau();

  const GreedyResult greedy = run_greedy(instance, epsilon);
  report.greedy_cost = greedy.cost;
  report.greedy_f = greedy.f_value;
  report.greedy_ok = greedy.f_value >= target && greedy.cost <= budget;

  report.delta = admissible_delta(instance, report.optimal_cost);
  report.final_bin = final_bin_index(epsilon, report.delta);
  report.easc_iteration_cap = static_cast<std::uint64_t>(
      std::ceil(cap_factor * iteration_bound(instance, epsilon)));

  EascConfig config;
  config.epsilon = epsilon;
  config.delta = report.delta;
  config.iterations = report.easc_iteration_cap;
  config.seed = seed;
  config.trace_stride = report.easc_iteration_cap + 1;
  const std::size_t r = report.final_bin;
  run_easc(instance, config, {}, [&](const EascStep& step) {
    const Entry* top = step.population.at_bin(r);
    if (top && is_cost_effective(*top, r, report.optimal_cost, epsilon)) {
      report.easc_iterations = step.iteration;
      report.easc_cost = top->cost;
      report.easc_f = top->f;
      return false;
    }
    return true;
  });
  report.easc_ok = report.easc_iterations.has_value() &&
                   report.easc_f >= target && report.easc_cost <= budget;
  return report;
}

}  // namespace mcsc
