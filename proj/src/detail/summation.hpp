#pragma once

#include <cmath>

#include "hypcenter/geometry.hpp"

namespace hypcenter::detail {

// Neumaier's variant of compensated summation; order-dependent but
// deterministic for a fixed atom order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedVecSum {
 public:
  explicit CompensatedVecSum(int dim) : sum_(Vec::Zero(dim)), comp_(Vec::Zero(dim)) {}

  void add(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double s = sum_[i];
      const double t = s + v[i];
      if (std::abs(s) >= std::abs(v[i]))
        comp_[i] += (s - t) + v[i];
      else
        comp_[i] += (v[i] - t) + s;
      sum_[i] = t;
    }
  }
  Vec value() const { return sum_ + comp_; }

 private:
  Vec sum_;
  Vec comp_;
};

}  // namespace hypcenter::detail
