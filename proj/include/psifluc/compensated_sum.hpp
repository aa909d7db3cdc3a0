#pragma once

namespace psifluc {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when an addend is larger in magnitude than the running sum.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double t = sum + value;
    if (t - t != 0.0) {  // inf/nan: let it propagate
      sum = t;
      return;
    }
    if ((sum >= 0 ? sum : -sum) >= (value >= 0 ? value : -value))
      compensation += (sum - t) + value;
    else
      compensation += (value - t) + sum;
    sum = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum + compensation; }
};

}  // namespace psifluc
