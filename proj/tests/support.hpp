#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "mcsc/coverage.hpp"
#include "mcsc/instance.hpp"
#include "mcsc/oracle.hpp"
#include "mcsc/subset.hpp"

namespace mcsc::testing {

// Unit-weight coverage instance; items are numbered 0..m-1.
inline CoverageProblem unit_coverage(
    std::size_t m, std::vector<std::vector<std::size_t>> covers,
    std::vector<double> costs, double tau) {
  return CoverageProblem{std::vector<double>(m, 1.0), std::move(covers),
                         std::move(costs), tau};
}

// S = {a, b, c}: a -> {1,2} c=1, b -> {3,4} c=1, c -> {1,2,3} c=1.5; items
// 1..4 are stored as 0..3.
inline CoverageProblem abc_problem(double tau = 4.0) {
  return unit_coverage(4, {{0, 1}, {2, 3}, {0, 1, 2}}, {1.0, 1.0, 1.5}, tau);
}

// An oracle returning a caller-chosen value for every set, for testing
// clamping and accounting in isolation.
class ConstantOracle final : public SubmodularOracle {
 public:
  ConstantOracle(std::size_t n, double value) : n_(n), value_(value) {}
  std::size_t ground_size() const override { return n_; }

 protected:
  double do_evaluate(const Subset&) const override { return value_; }

 private:
  std::size_t n_;
  double value_;
};

// f(X) = |X| scaled, using the default extension evaluator.
class CardinalityOracle final : public SubmodularOracle {
 public:
  explicit CardinalityOracle(std::size_t n, double scale = 1.0)
      : n_(n), scale_(scale) {}
  std::size_t ground_size() const override { return n_; }

 protected:
  double do_evaluate(const Subset& x) const override {
    return scale_ * static_cast<double>(x.size());
  }

 private:
  std::size_t n_;
  double scale_;
};

// Every subset of {0..n-1} as a bitmask-ordered list. n <= 16.
inline std::vector<Subset> all_subsets(std::size_t n) {
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    out.push_back(Subset::from_mask(n, mask));
  }
  return out;
}

}  // namespace mcsc::testing
