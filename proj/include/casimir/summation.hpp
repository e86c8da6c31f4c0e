#pragma once

#include <cmath>

namespace casimir {

/// Truncation control for the primed image sums.
struct SummationControl {
  double tol = 1e-10;    ///< stop when last pair and tail bound are below tol * |sum|
  long n_max = 1'000'000; ///< largest image index visited

  /// Throws DomainError unless 0 < tol < 1 and n_max >= 1.
  void validate() const;
};

/// A truncated image sum together with its certificate.
struct SeriesValue {
  double value = 0.0;
  long terms_used = 0;        ///< largest |n| summed
  double tail_estimate = 0.0; ///< upper bound on the neglected tail
};

/// Neumaier compensated sum.
class CompensatedSum {
public:
  explicit CompensatedSum(double initial = 0.0) : sum_(initial) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace casimir
