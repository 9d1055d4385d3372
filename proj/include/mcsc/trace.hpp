#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace mcsc {

// One convergence checkpoint of an anytime run. Evaluations are counted from
// the start of the run, including the evaluation of the empty set.
struct TraceRow {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;
  // Minimum cost over population entries that meet the feasibility
  // threshold, with that entry's f value. Empty if no entry qualifies.
  std::optional<double> best_feasible_cost;
  std::optional<double> best_feasible_f;
  std::size_t population_size = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

using TraceCallback = std::function<void(const TraceRow&)>;

}  // namespace mcsc
