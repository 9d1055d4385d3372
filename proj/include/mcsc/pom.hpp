#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcsc/instance.hpp"
#include "mcsc/subset.hpp"
#include "mcsc/trace.hpp"

namespace mcsc {

enum class Domination { kNone, kWeak, kStrict };

// A point in (benefit, cost) space; more benefit and less cost is better.
struct Objectives {
  double f = 0.0;
  double cost = 0.0;
};

// kWeak iff b.f <= a.f and a.cost <= b.cost with both equalities;
// kStrict iff that holds with at least one inequality strict.
Domination dominates(const Objectives& a, const Objectives& b);

struct ParetoEntry {
  Subset set;
  // min(f(set), tau').
  double f = 0.0;
  double cost = 0.0;
};

// Mutually non-dominated archive, sorted by increasing f. Costs then
// strictly increase with f.
class ParetoPopulation {
 public:
  explicit ParetoPopulation(double tau_prime) : tau_prime_(tau_prime) {}

  double tau_prime() const { return tau_prime_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const ParetoEntry> entries() const { return entries_; }

  // Keeps x iff no entry strictly dominates it; on acceptance removes every
  // entry x weakly dominates. Returns the number of entries removed, or -1
  // if x was rejected.
  long offer(ParetoEntry x);

 private:
  double tau_prime_;
  std::vector<ParetoEntry> entries_;
};

struct PomConfig {
  double tau_prime = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t trace_stride = 100;
};

struct PomStep {
  std::uint64_t iteration = 0;
  const ParetoEntry& offspring;
  bool accepted = false;
  const ParetoPopulation& population;
};

// Return false to stop the run early.
using PomStepCallback = std::function<bool(const PomStep&)>;

struct PomResult {
  ParetoPopulation population;
  std::vector<TraceRow> trace;
  std::uint64_t iterations_run = 0;
  std::uint64_t evaluations = 0;
  std::size_t max_population_size = 0;
};

// Pareto optimization baseline with the same mutation operator as EASC.
// Trace rows report the cheapest entry with f >= tau'.
// Throws DomainError unless 0 <= tau' <= tau.
PomResult run_pom(const Instance& instance, const PomConfig& config,
                  const TraceCallback& on_row = {},
                  const PomStepCallback& on_step = {});

}  // namespace mcsc
