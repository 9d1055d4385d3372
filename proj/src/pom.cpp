#include "mcsc/pom.hpp"

#include <algorithm>

#include "mcsc/easc.hpp"
#include "mcsc/errors.hpp"
#include "mcsc/random.hpp"

namespace mcsc {

Domination dominates(const Objectives& a, const Objectives& b) {
  if (!(b.f <= a.f && a.cost <= b.cost)) return Domination::kNone;
  if (b.f < a.f || a.cost < b.cost) return Domination::kStrict;
  return Domination::kWeak;
}

long ParetoPopulation::offer(ParetoEntry x) {
  const Objectives ox{x.f, x.cost};
  // Among entries with f >= x.f the cheapest is the first one, so it is the
  // only candidate that can strictly dominate x.
  auto above = std::lower_bound(
      entries_.begin(), entries_.end(), x.f,
      [](const ParetoEntry& e, double f) { return e.f < f; });
  if (above != entries_.end() &&
      dominates({above->f, above->cost}, ox) == Domination::kStrict) {
    return -1;
  }
  // Entries x weakly dominates have f <= x.f and cost >= x.cost; with costs
  // increasing in f they form a contiguous run ending at `above` (inclusive
  // when above->f == x.f).
  auto last = above;
  if (last != entries_.end() && last->f == x.f) ++last;
  auto first = last;
  while (first != entries_.begin() && std::prev(first)->cost >= x.cost) {
    --first;
  }
  const long removed = static_cast<long>(last - first);
  auto pos = entries_.erase(first, last);
  entries_.insert(pos, std::move(x));
  return removed;
}

PomResult run_pom(const Instance& instance, const PomConfig& config,
                  const TraceCallback& on_row,
                  const PomStepCallback& on_step) {
  const double tau_prime = config.tau_prime;
  if (!(tau_prime >= 0.0 && tau_prime <= instance.tau())) {
    throw DomainError("tau' must lie in [0, tau]");
  }
  const std::uint64_t stride = std::max<std::uint64_t>(1, config.trace_stride);

  PomResult result{ParetoPopulation(tau_prime), {}, 0, 0, 0};
  ParetoPopulation& pop = result.population;
  Rng rng(config.seed);

  Subset empty = instance.empty_set();
  const double f_empty = std::min(instance.value(empty), tau_prime);
  result.evaluations = 1;
  pop.offer(ParetoEntry{std::move(empty), f_empty, 0.0});
  result.max_population_size = pop.size();

  auto emit = [&](std::uint64_t iteration) {
    TraceRow row;
    row.iteration = iteration;
    row.evaluations = result.evaluations;
    // The front is sorted by f, so the only candidate is the last entry.
    const ParetoEntry& top = pop.entries().back();
    if (top.f >= tau_prime) {
      row.best_feasible_cost = top.cost;
      row.best_feasible_f = top.f;
    }
    row.population_size = pop.size();
    result.trace.push_back(row);
    if (on_row) on_row(row);
  };
  emit(0);

  std::uint64_t t = 0;
  while (t < config.iterations) {
    ++t;
    const ParetoEntry& parent = pop.entries()[rng.uniform_index(pop.size())];
    Subset child = mutate(parent.set, rng);
    const double f = std::min(instance.value(child), tau_prime);
    ++result.evaluations;
    const double cost = instance.cost(child);
    ParetoEntry offspring{std::move(child), f, cost};

    bool keep_going = true;
    if (on_step) {
      const ParetoEntry snapshot = offspring;
      const bool accepted = pop.offer(std::move(offspring)) >= 0;
      keep_going = on_step(PomStep{t, snapshot, accepted, pop});
    } else {
      pop.offer(std::move(offspring));
    }
    result.max_population_size =
        std::max(result.max_population_size, pop.size());

    if (!keep_going) break;
    if (t % stride == 0) emit(t);
  }
  result.iterations_run = t;
  if (result.trace.back().iteration != t) emit(t);
  return result;
}

}  // namespace mcsc
