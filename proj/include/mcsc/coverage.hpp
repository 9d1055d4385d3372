#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "mcsc/instance.hpp"
#include "mcsc/oracle.hpp"

namespace mcsc {

// Weighted coverage: f(X) is the total weight of the universe items covered
// by at least one member of X. Monotone and submodular by construction.
class CoverageFunction final : public SubmodularOracle {
 public:
  // Throws InvalidInstance on non-positive weights or item indices >= m.
  CoverageFunction(std::vector<double> weights,
                   std::vector<std::vector<std::size_t>> covers);

  std::size_t ground_size() const override { return covers_.size(); }
  std::size_t universe_size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<std::size_t>>& covers() const {
    return covers_;
  }

 protected:
  double do_evaluate(const Subset& x) const override;
  std::unique_ptr<ExtensionEvaluator> make_extension_evaluator(
      const Subset& base) const override;

 private:
  friend class CoverageExtensions;
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> covers_;
};

// Serializable description of a weighted-coverage MCSC instance.
struct CoverageProblem {
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> covers;
  std::vector<double> costs;
  double tau = 0.0;

  std::size_t n() const { return covers.size(); }
  std::size_t m() const { return weights.size(); }

  friend bool operator==(const CoverageProblem&,
                         const CoverageProblem&) = default;
};

Instance make_instance(const CoverageProblem& problem);

struct RandomCoverageSpec {
  std::size_t n = 8;
  std::size_t m = 10;
  // Probability that an element covers a given item.
  double density = 0.3;
  // Costs are uniform on [1, cost_spread].
  double cost_spread = 4.0;
  // tau = tau_fraction * f(S).
  double tau_fraction = 0.7;
  std::uint64_t seed = 0;
};

// Deterministic per spec. Unit item weights. Redraws the cover sets until
// f(S) > 0.
CoverageProblem random_coverage_problem(const RandomCoverageSpec& spec);

}  // namespace mcsc
