#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mcsc/oracle.hpp"
#include "mcsc/subset.hpp"

namespace mcsc {

// Result of scanning every element for the best marginal gain per unit cost.
struct BestRatio {
  std::size_t element = 0;
  double ratio = 0.0;
  // f_tau(X + {element}) - f_tau(X).
  double gain = 0.0;
  // Unclamped f(X + {element}).
  double value_with = 0.0;
};

// A Minimum Cost Submodular Cover instance: ground set {0..n-1}, positive
// modular costs, a monotone submodular benefit oracle and a threshold tau.
//
// Construction validates the instance and evaluates f(S) once.
class Instance {
 public:
  Instance(std::vector<double> costs,
           std::shared_ptr<const SubmodularOracle> oracle, double tau);

  std::size_t n() const { return costs_.size(); }
  std::span<const double> costs() const { return costs_; }
  double cost_of(std::size_t x) const { return costs_[x]; }
  double tau() const { return tau_; }
  const SubmodularOracle& oracle() const { return *oracle_; }
  std::shared_ptr<const SubmodularOracle> oracle_ptr() const { return oracle_; }

  double c_min() const { return c_min_; }
  double c_max() const { return c_max_; }
  // c(S).
  double total_cost() const { return total_cost_; }
  // f(S), as evaluated at construction.
  double full_value() const { return full_value_; }

  Subset empty_set() const { return Subset(n()); }

  // Sum of member costs in increasing element order.
  double cost(const Subset& x) const;

  // Unclamped f(X). One evaluation.
  double value(const Subset& x) const { return oracle_->evaluate(x); }

  // min(f(X), tau). One evaluation.
  double f_tau(const Subset& x) const;

  // f_tau(X + {x}) - f_tau(X). Two evaluations if x is not in X, none
  // otherwise (the gain of a member is 0).
  double marginal_gain_tau(const Subset& x_set, std::size_t x) const;

  // argmax over all of S of gain/cost, lowest index on ties. Members are
  // scanned too; their gain is 0. Performs n evaluations, plus one for the
  // base when base_f is not supplied. base_f is the unclamped f(X).
  BestRatio best_ratio_element(const Subset& x_set,
                               std::optional<double> base_f = {}) const;

 private:
  std::vector<double> costs_;
  std::shared_ptr<const SubmodularOracle> oracle_;
  double tau_;
  double c_min_ = 0.0;
  double c_max_ = 0.0;
  double total_cost_ = 0.0;
  double full_value_ = 0.0;
};

}  // namespace mcsc
