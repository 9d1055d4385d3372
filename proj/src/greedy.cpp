#include "mcsc/greedy.hpp"

#include <string>

#include "mcsc/errors.hpp"

namespace mcsc {

GreedyResult run_greedy(const Instance& instance, double epsilon,
                        std::size_t max_steps, const TraceCallback& on_row) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw DomainError("greedy epsilon must lie in [0, 1)");
  }
  const double target = (1.0 - epsilon) * instance.tau();

  GreedyResult result;
  result.solution = instance.empty_set();
  result.f_value = instance.value(result.solution);
  result.evaluations = 1;

  auto emit = [&] {
    if (!on_row) return;
    TraceRow row;
    row.iteration = result.order.size();
    row.evaluations = result.evaluations;
    if (result.f_value >= target) {
      row.best_feasible_cost = result.cost;
      row.best_feasible_f = result.f_value;
    }
    row.population_size = 1;
    on_row(row);
  };
  emit();

  while (result.f_value < target) {
    if (result.order.size() >= max_steps) {
      throw StepLimitExceeded("greedy did not reach (1-eps)tau within " +
                              std::to_string(max_steps) + " steps");
    }
    const BestRatio best =
        instance.best_ratio_element(result.solution, result.f_value);
    result.evaluations += instance.n();
    if (!(best.ratio > 0.0)) {
      result.reached_target = false;
      break;
    }
    result.solution.insert(best.element);
    result.order.push_back(best.element);
    result.cost = instance.cost(result.solution);
    result.f_value = best.value_with;
    emit();
  }
  return result;
}

}  // namespace mcsc
