#include "mcsc/easc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsc/errors.hpp"

namespace mcsc {

std::size_t final_bin_index(double epsilon, double delta,
                            std::size_t max_bins) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1)");
  }
  const double q = std::log(1.0 / epsilon) / std::log(1.0 / delta);
  // Absorb rounding so exact powers (e.g. 0.5^3 = 0.125) give the integer.
  const double r = std::ceil(q - 1e-9 * std::max(1.0, q));
  if (!(r + 1.0 <= static_cast<double>(max_bins))) {
    throw BinOverflow("final bin index " + std::to_string(r) +
                      " exceeds the cap of " + std::to_string(max_bins) +
                      " bins");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(r));
}

std::size_t bin_of(double f, double tau, double epsilon, double delta,
                   std::size_t r) {
  const double value = std::min(f, tau);
  if (value >= (1.0 - epsilon) * tau) return r;
  if (r == 0) return 0;
  const auto lower = [&](std::size_t i) {
    return (1.0 - std::pow(delta, static_cast<double>(i))) * tau;
  };
  const double guess =
      std::floor(std::log(1.0 - value / tau) / std::log(delta));
  std::size_t i = 0;
  if (guess > 0.0) {
    i = std::min(static_cast<std::size_t>(guess), r - 1);
  }
  while (i + 1 < r && value >= lower(i + 1)) ++i;
  while (i > 0 && value < lower(i)) --i;
  return i;
}

double phi(double cost, double f, std::size_t bin, std::size_t r, double tau,
           double epsilon) {
  if (bin == 0 || bin == r) return cost;
  if (f >= (1.0 - epsilon) * tau || f >= tau) {
    throw DomainError("interior bin " + std::to_string(bin) +
                      " with f at or above the final-bin threshold");
  }
  return cost / std::log(tau / (tau - f));
}

bool precedes(const Entry& y, const Entry& x) {
  return x.bin == y.bin && x.phi < y.phi;
}

Subset mutate(const Subset& x, Rng& rng) {
  Subset out = x;
  const std::size_t n = x.universe();
  if (n == 0) return out;
  if (n == 1) {
    out.flip(0);
    return out;
  }
  // Positions of flipped bits are separated by Geometric(1/n) gaps, which
  // is the same law as n independent Bernoulli(1/n) trials.
  const double log_keep = std::log1p(-1.0 / static_cast<double>(n));
  std::size_t pos = 0;
  while (true) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_keep);
    if (!(gap < static_cast<double>(n - pos))) break;
    pos += static_cast<std::size_t>(gap);
    out.flip(pos);
    ++pos;
    if (pos >= n) break;
  }
  return out;
}

Population::Population(std::size_t final_bin)
    : slot_of_bin_(final_bin + 1, kEmpty) {}

const Entry* Population::at_bin(std::size_t bin) const {
  if (bin >= slot_of_bin_.size() || slot_of_bin_[bin] == kEmpty) {
    return nullptr;
  }
  return &entries_[slot_of_bin_[bin]];
}

Population::Offer Population::offer(Entry x) {
  Offer result;
  std::size_t& slot = slot_of_bin_.at(x.bin);
  if (slot == kEmpty) {
    slot = entries_.size();
    entries_.push_back(std::move(x));
    result.inserted = true;
    return result;
  }
  Entry& incumbent = entries_[slot];
  if (precedes(x, incumbent)) return result;
  result.evicted = std::move(incumbent);
  incumbent = std::move(x);
  result.inserted = true;
  return result;
}

EascResult run_easc(const Instance& instance, const EascConfig& config,
                    const TraceCallback& on_row,
                    const EascStepCallback& on_step) {
  const double eps = config.epsilon;
  const double delta = config.delta;
  const double tau = instance.tau();
  const std::size_t r = final_bin_index(eps, delta, config.max_bins);
  const std::uint64_t stride = std::max<std::uint64_t>(1, config.trace_stride);

  EascResult result{Population(r), {}, 0, 0};
  Population& pop = result.population;
  Rng rng(config.seed);

  auto make_entry = [&](Subset set, double f) {
    Entry e;
    e.cost = instance.cost(set);
    e.f = f;
    e.bin = bin_of(f, tau, eps, delta, r);
    e.phi = phi(e.cost, f, e.bin, r, tau, eps);
    e.set = std::move(set);
    return e;
  };

  Subset empty = instance.empty_set();
  const double f_empty = instance.value(empty);
  result.evaluations = 1;
  pop.offer(make_entry(std::move(empty), f_empty));

  auto emit = [&](std::uint64_t iteration) {
    TraceRow row;
    row.iteration = iteration;
    row.evaluations = result.evaluations;
    if (const Entry* best = pop.at_bin(r)) {
      row.best_feasible_cost = best->cost;
      row.best_feasible_f = best->f;
    }
    row.population_size = pop.size();
    result.trace.push_back(row);
    if (on_row) on_row(row);
  };
  emit(0);

  std::uint64_t t = 0;
  while (t < config.iterations) {
    ++t;
    const Entry& parent = pop.entries()[rng.uniform_index(pop.size())];
    Subset child = mutate(parent.set, rng);
    const double f = instance.value(child);
    ++result.evaluations;
    Entry offspring = make_entry(std::move(child), f);

    bool keep_going = true;
    if (on_step) {
      const Entry snapshot = offspring;
      Population::Offer outcome = pop.offer(std::move(offspring));
      keep_going = on_step(EascStep{t, snapshot, outcome.inserted,
                                    outcome.evicted, pop});
    } else {
      pop.offer(std::move(offspring));
    }

    if (!keep_going) break;
    if (t % stride == 0) emit(t);
  }
  result.iterations_run = t;
  if (result.trace.back().iteration != t) emit(t);
  return result;
}

double choose_delta(const Instance& instance, double upper_bound) {
  if (!(upper_bound > instance.c_min())) {
    throw DomainError("upper bound on c(A*) must exceed c_min");
  }
  return 1.0 - instance.c_min() / std::min(upper_bound, instance.total_cost());
}

}  // namespace mcsc
