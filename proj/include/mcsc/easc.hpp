#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mcsc/instance.hpp"
#include "mcsc/random.hpp"
#include "mcsc/subset.hpp"
#include "mcsc/trace.hpp"

namespace mcsc {

inline constexpr std::size_t kDefaultMaxBins = std::size_t{1} << 22;

struct EascConfig {
  double epsilon = 0.05;
  // The approximation guarantee needs delta in
  // [1 - c_min/c(A*), 1 - c_min/c(S)]; only delta in (0, 1) is checked.
  double delta = 0.5;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t trace_stride = 100;
  std::size_t max_bins = kDefaultMaxBins;
};

// Index r of the final bin: ceil(log_delta(epsilon)). Throws DomainError
// unless epsilon, delta lie in (0, 1), and BinOverflow if r + 1 > max_bins.
std::size_t final_bin_index(double epsilon, double delta,
                            std::size_t max_bins = kDefaultMaxBins);

// Bin of a solution with benefit f. Returns r when f >= (1-eps)tau; else the
// i in [0, r) with (1-delta^i)tau <= f < (1-delta^(i+1))tau.
std::size_t bin_of(double f, double tau, double epsilon, double delta,
                   std::size_t r);

// Cost-effectiveness. c in bins 0 and r, c / ln(tau / (tau - f)) otherwise.
// Lower is better. Throws DomainError for an interior bin with
// f >= (1-eps)tau.
double phi(double cost, double f, std::size_t bin, std::size_t r, double tau,
           double epsilon);

struct Entry {
  Subset set;
  // Unclamped f(set).
  double f = 0.0;
  double cost = 0.0;
  std::size_t bin = 0;
  double phi = 0.0;
};

// Y precedes X ("Y is weaker than X"): same bin and phi(X) < phi(Y).
bool precedes(const Entry& y, const Entry& x);

// Bit-flip mutation: each of the n = x.universe() bits flips independently
// with probability 1/n.
Subset mutate(const Subset& x, Rng& rng);

// Bin-indexed population holding at most one entry per bin.
class Population {
 public:
  explicit Population(std::size_t final_bin);

  std::size_t final_bin() const { return slot_of_bin_.size() - 1; }
  std::size_t size() const { return entries_.size(); }
  // Entries in order of first occupation of their bin.
  std::span<const Entry> entries() const { return entries_; }
  const Entry* at_bin(std::size_t bin) const;

  struct Offer {
    bool inserted = false;
    std::optional<Entry> evicted;
  };
  // Inserts x unless precedes(x, incumbent), i.e. unless the incumbent of
  // its bin has strictly lower phi. An inserted entry replaces the
  // incumbent, so ties on phi go to the newcomer.
  Offer offer(Entry x);

 private:
  static constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot_of_bin_;
  std::vector<Entry> entries_;
};

struct EascStep {
  std::uint64_t iteration = 0;
  const Entry& offspring;
  bool inserted = false;
  const std::optional<Entry>& evicted;
  const Population& population;
};

// Called after every iteration; return false to stop the run early.
using EascStepCallback = std::function<bool(const EascStep&)>;

struct EascResult {
  Population population;
  std::vector<TraceRow> trace;
  std::uint64_t iterations_run = 0;
  // Oracle evaluations made by this run: 1 + iterations_run.
  std::uint64_t evaluations = 0;
};

// Runs the bin-based evolutionary algorithm from the population {empty set}.
// Each iteration picks an entry uniformly, mutates it, evaluates f once and
// offers the result to the population. Trace rows are emitted at iteration 0,
// every trace_stride iterations, and at the last iteration.
EascResult run_easc(const Instance& instance, const EascConfig& config,
                    const TraceCallback& on_row = {},
                    const EascStepCallback& on_step = {});

// delta = 1 - c_min / min(B, c(S)) for an upper bound B on c(A*).
// Throws DomainError when B <= c_min.
double choose_delta(const Instance& instance, double upper_bound);

}  // namespace mcsc
