#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "mcsc/subset.hpp"

namespace mcsc {

class ExtensionEvaluator;
namespace detail {
class RescanEvaluator;
}

// A monotone submodular benefit function f : 2^S -> R>=0.
//
// Every call to evaluate(), and every value query on an ExtensionEvaluator,
// increments evaluation_count() by exactly one. The counter is atomic so
// concurrent runs may share one oracle.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  virtual std::size_t ground_size() const = 0;

  double evaluate(const Subset& x) const {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
    return do_evaluate(x);
  }

  // Prepares repeated evaluation of f(base + {x}) for many x. Preparing is
  // free; each value query on the returned object counts as one evaluation.
  std::unique_ptr<ExtensionEvaluator> extensions_of(const Subset& base) const;

  std::uint64_t evaluation_count() const {
    return evaluations_.load(std::memory_order_relaxed);
  }

 protected:
  virtual double do_evaluate(const Subset& x) const = 0;

  // Oracles with cheap incremental structure override this. The default
  // re-evaluates base + {x} from scratch.
  virtual std::unique_ptr<ExtensionEvaluator> make_extension_evaluator(
      const Subset& base) const;

 private:
  friend class ExtensionEvaluator;
  friend class detail::RescanEvaluator;
  void count_evaluation() const {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
  }

  mutable std::atomic<std::uint64_t> evaluations_{0};
};

// Evaluates f(base) and f(base + {x}) for a fixed base set.
//
// value_with(x) for a member x of base returns exactly base_value().
class ExtensionEvaluator {
 public:
  explicit ExtensionEvaluator(const SubmodularOracle& oracle)
      : oracle_(oracle) {}
  virtual ~ExtensionEvaluator() = default;

  double base_value() {
    oracle_.count_evaluation();
    return do_base_value();
  }

  double value_with(std::size_t x) {
    oracle_.count_evaluation();
    return do_value_with(x);
  }

 protected:
  virtual double do_base_value() = 0;
  virtual double do_value_with(std::size_t x) = 0;

 private:
  const SubmodularOracle& oracle_;
};

}  // namespace mcsc
