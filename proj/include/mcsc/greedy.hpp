#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "mcsc/instance.hpp"
#include "mcsc/subset.hpp"
#include "mcsc/trace.hpp"

namespace mcsc {

struct GreedyResult {
  Subset solution;
  // Elements in the order they were added.
  std::vector<std::size_t> order;
  double cost = 0.0;
  // Unclamped f(solution).
  double f_value = 0.0;
  std::uint64_t evaluations = 0;
  // False only if the scan stalled (every ratio 0) below (1-eps)tau, which
  // happens with sampled oracles and eps = 0.
  bool reached_target = true;
};

// Bicriteria greedy: starting from the empty set, repeatedly add the element
// of best f_tau-gain per unit cost until f(A) >= (1-eps)tau.
//
// Uses 1 + n*k evaluations for k added elements. eps must lie in [0, 1).
// on_row, if set, receives one row for the empty set and one per added
// element. Throws StepLimitExceeded if more than max_steps additions would
// be needed.
GreedyResult run_greedy(
    const Instance& instance, double epsilon,
    std::size_t max_steps = std::numeric_limits<std::size_t>::max(),
    const TraceCallback& on_row = {});

}  // namespace mcsc
