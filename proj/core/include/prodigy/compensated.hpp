#pragma once

#include <cmath>

namespace prodigy {

/// Neumaier-compensated running sum.
///
/// The distance estimates are ratios of long accumulations whose terms span
/// many orders of magnitude once d grows away from a tiny d0, so the scalar
/// accumulators are kept in compensated form.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double v) : sum_(v) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace prodigy
