#include "mcsc/oracle.hpp"

namespace mcsc {
namespace detail {

class RescanEvaluator final : public ExtensionEvaluator {
 public:
  RescanEvaluator(const SubmodularOracle& oracle, const Subset& base)
      : ExtensionEvaluator(oracle), oracle_(oracle), scratch_(base) {}

 protected:
  double do_base_value() override {
    if (!base_value_) base_value_ = oracle_.do_evaluate(scratch_);
    return *base_value_;
  }

  double do_value_with(std::size_t x) override {
    if (scratch_.contains(x)) return do_base_value();
    scratch_.insert(x);
    const double v = oracle_.do_evaluate(scratch_);
    scratch_.erase(x);
    return v;
  }

 private:
  const SubmodularOracle& oracle_;
  Subset scratch_;
  std::optional<double> base_value_;
};

}  // namespace detail

std::unique_ptr<ExtensionEvaluator> SubmodularOracle::extensions_of(
    const Subset& base) const {
  return make_extension_evaluator(base);
}

std::unique_ptr<ExtensionEvaluator> SubmodularOracle::make_extension_evaluator(
    const Subset& base) const {
  return std::make_unique<detail::RescanEvaluator>(*this, base);
}

}  // namespace mcsc
