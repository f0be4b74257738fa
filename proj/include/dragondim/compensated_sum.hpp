#pragma once

#include <cmath>

namespace dragondim {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum,
/// which happens constantly for the signed, oscillating coordinate terms.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace dragondim
