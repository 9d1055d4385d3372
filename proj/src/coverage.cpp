#include "mcsc/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsc/errors.hpp"
#include "mcsc/random.hpp"

namespace mcsc {

CoverageFunction::CoverageFunction(std::vector<double> weights,
                                   std::vector<std::vector<std::size_t>> covers)
    : weights_(std::move(weights)), covers_(std::move(covers)) {
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw InvalidInstance("weight of item " + std::to_string(j) +
                            " must be finite and > 0");
    }
  }
  for (auto& items : covers_) {
    for (std::size_t j : items) {
      if (j >= weights_.size()) {
        throw InvalidInstance("cover item " + std::to_string(j) +
                              " out of range");
      }
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  }
}

double CoverageFunction::do_evaluate(const Subset& x) const {
  std::vector<char> covered(weights_.size(), 0);
  x.for_each([&](std::size_t i) {
    for (std::size_t j : covers_[i]) covered[j] = 1;
  });
  double total = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (covered[j]) total += weights_[j];
  }
  return total;
}

class CoverageExtensions final : public ExtensionEvaluator {
 public:
  CoverageExtensions(const CoverageFunction& fn, const Subset& base)
      : ExtensionEvaluator(fn),
        fn_(fn),
        base_(base),
        covered_(fn.weights_.size(), 0) {
    base.for_each([&](std::size_t i) {
      for (std::size_t j : fn.covers_[i]) covered_[j] = 1;
    });
    for (std::size_t j = 0; j < covered_.size(); ++j) {
      if (covered_[j]) base_value_ += fn.weights_[j];
    }
  }

 protected:
  double do_base_value() override { return base_value_; }
  double do_value_with(std::size_t x) override {
    if (base_.contains(x)) return base_value_;
    double extra = 0.0;
    for (std::size_t j : fn_.covers_[x]) {
      if (!covered_[j]) extra += fn_.weights_[j];
    }
    return base_value_ + extra;
  }

 private:
  const CoverageFunction& fn_;
  Subset base_;
  std::vector<char> covered_;
  double base_value_ = 0.0;
};

std::unique_ptr<ExtensionEvaluator> CoverageFunction::make_extension_evaluator(
    const Subset& base) const {
  return std::make_unique<CoverageExtensions>(*this, base);
}

Instance make_instance(const CoverageProblem& problem) {
  auto fn = std::make_shared<CoverageFunction>(problem.weights, problem.covers);
  return Instance(problem.costs, std::move(fn), problem.tau);
}

CoverageProblem random_coverage_problem(const RandomCoverageSpec& spec) {
  if (spec.n == 0 || spec.m == 0) {
    throw DomainError("random coverage needs n >= 1 and m >= 1");
  }
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
    throw DomainError("density must lie in [0, 1]");
  }
  if (!(spec.cost_spread >= 1.0)) throw DomainError("cost_spread must be >= 1");
  if (!(spec.tau_fraction >= 0.0 && spec.tau_fraction <= 1.0)) {
    throw DomainError("tau_fraction must lie in [0, 1]");
  }
  if (spec.density == 0.0) {
    throw DomainError("density 0 can never give f(S) > 0");
  }

  Rng rng(spec.seed);
  CoverageProblem p;
  p.weights.assign(spec.m, 1.0);
  p.costs.resize(spec.n);
  for (double& c : p.costs) {
    c = 1.0 + (spec.cost_spread - 1.0) * rng.uniform01();
  }
  std::size_t covered_items = 0;
  while (covered_items == 0) {
    p.covers.assign(spec.n, {});
    std::vector<char> any(spec.m, 0);
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (std::size_t j = 0; j < spec.m; ++j) {
        if (spec.density >= 1.0 || rng.uniform01() < spec.density) {
          p.covers[i].push_back(j);
          any[j] = 1;
        }
      }
    }
    covered_items = static_cast<std::size_t>(
        std::count(any.begin(), any.end(), char{1}));
  }
  // Unit weights: f(S) is the number of covered items.
  p.tau = spec.tau_fraction * static_cast<double>(covered_items);
  return p;
}

}  // namespace mcsc
