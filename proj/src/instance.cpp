#include "mcsc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsc/errors.hpp"

namespace mcsc {

Instance::Instance(std::vector<double> costs,
                   std::shared_ptr<const SubmodularOracle> oracle, double tau)
    : costs_(std::move(costs)), oracle_(std::move(oracle)), tau_(tau) {
  if (costs_.empty()) throw InvalidInstance("ground set must be non-empty");
  if (!oracle_) throw InvalidInstance("missing benefit oracle");
  if (oracle_->ground_size() != costs_.size()) {
    throw InvalidInstance("oracle ground set has " +
                          std::to_string(oracle_->ground_size()) +
                          " elements, cost vector has " +
                          std::to_string(costs_.size()));
  }
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    if (!(costs_[i] > 0.0) || !std::isfinite(costs_[i])) {
      throw InvalidInstance("cost of element " + std::to_string(i) +
                            " must be finite and > 0");
    }
  }
  if (!(tau_ >= 0.0) || !std::isfinite(tau_)) {
    throw InvalidInstance("tau must be finite and >= 0");
  }
  c_min_ = *std::min_element(costs_.begin(), costs_.end());
  c_max_ = *std::max_element(costs_.begin(), costs_.end());
  for (double c : costs_) total_cost_ += c;

  full_value_ = oracle_->evaluate(Subset::full(costs_.size()));
  if (tau_ > full_value_ + 1e-9 * std::max(1.0, std::abs(full_value_))) {
    throw InvalidInstance("tau " + std::to_string(tau_) + " exceeds f(S) = " +
                          std::to_string(full_value_));
  }
}

double Instance::cost(const Subset& x) const {
  double total = 0.0;
  x.for_each([&](std::size_t i) { total += costs_[i]; });
  return total;
}

double Instance::f_tau(const Subset& x) const {
  return std::min(oracle_->evaluate(x), tau_);
}

double Instance::marginal_gain_tau(const Subset& x_set, std::size_t x) const {
  if (x_set.contains(x)) return 0.0;
  Subset with = x_set;
  with.insert(x);
  return f_tau(with) - f_tau(x_set);
}

BestRatio Instance::best_ratio_element(const Subset& x_set,
                                       std::optional<double> base_f) const {
  auto ext = oracle_->extensions_of(x_set);
  const double base = std::min(base_f ? *base_f : ext->base_value(), tau_);
  BestRatio best;
  bool first = true;
  for (std::size_t x = 0; x < n(); ++x) {
    const double with = ext->value_with(x);
    const double gain = std::min(with, tau_) - base;
    const double ratio = gain / costs_[x];
    if (first || ratio > best.ratio) {
      best = BestRatio{x, ratio, gain, with};
      first = false;
    }
  }
  return best;
}

}  // namespace mcsc
