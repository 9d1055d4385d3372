#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mcsc/instance.hpp"
#include "mcsc/subset.hpp"

namespace mcsc {

inline constexpr std::size_t kMaxBruteForceN = 24;

struct OptimalSolution {
  Subset subset;
  double cost = 0.0;
  // True once all 2^n subsets were examined.
  bool certified = false;
};

// Exhaustive minimum-cost subset with f(X) >= tau. Among equal costs the
// subset with the smallest bitmask (bit i = element i) wins.
// Throws BudgetExceeded for n > 24 and Infeasible if nothing reaches tau.
OptimalSolution brute_force_optimum(const Instance& instance);

}  // namespace mcsc

namespace mcsc {

// ln(1/eps) + 1.
double bicriteria_factor(double epsilon);

// e * n * r * (r + 1): expected iterations for EASC to place a
// cost-effective entry in its final bin r, given an admissible delta.
double iteration_bound_for_bins(std::size_t n, std::size_t r);

// e * n * ((c_max/c_min) ln(1/eps) n + 1)^2, the bin-count-free form.
double iteration_bound(const Instance& instance, double epsilon);

// (c_max/c_min) ln(1/eps) n + 1, the cap on the number of bins.
double bin_count_bound(const Instance& instance, double epsilon);

// A delta inside [1 - c_min/c(A*), 1 - c_min/c(S)]: the lower endpoint when
// it is positive, else the midpoint of (0, 1 - c_min/c(S)].
// Throws DomainError when the interval has no point in (0, 1).
double admissible_delta(const Instance& instance, double optimal_cost);

struct Entry;

// Interior bins: phi <= c(A*). Final bin: cost <= (ln(1/eps)+1) c(A*).
// Comparisons allow 1e-9 absolute slack.
bool is_cost_effective(const Entry& entry, std::size_t final_bin,
                       double optimal_cost, double epsilon);

struct GuaranteeReport {
  double optimal_cost = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t final_bin = 0;

  double greedy_cost = 0.0;
  double greedy_f = 0.0;
  bool greedy_ok = false;

  // Iterations until the final bin held a cost-effective entry, if it
  // happened within the cap.
  std::optional<std::uint64_t> easc_iterations;
  std::uint64_t easc_iteration_cap = 0;
  double easc_cost = 0.0;
  double easc_f = 0.0;
  bool easc_ok = false;
};

// Brute-forces c(A*) unless supplied, then checks the bicriteria bound for
// greedy and for EASC run with admissible_delta until its final bin holds a
// cost-effective entry or cap_factor * iteration_bound iterations pass.
GuaranteeReport check_guarantees(const Instance& instance, double epsilon,
                                 std::uint64_t seed, double cap_factor = 10.0,
                                 std::optional<double> optimal_cost = {});

}  // namespace mcsc
