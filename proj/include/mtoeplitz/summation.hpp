#pragma once

#include <cmath>
#include <complex>

namespace mtoeplitz {

// Neumaier's variant of Kahan summation. Adding an exact zero leaves the
// state untouched, so sums over sparse and dense index sets coincide.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      correction_ += (sum_ - t) + term;
    } else {
      correction_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double term) noexcept {
    add(term);
    return *this;
  }

  double value() const noexcept { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> term) noexcept {
    re_.add(term.real());
    im_.add(term.imag());
  }
  CompensatedComplexSum& operator+=(std::complex<double> term) noexcept {
    add(term);
    return *this;
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

template <class Scalar>
struct AccumulatorFor {
  using type = CompensatedSum;
};

template <>
struct AccumulatorFor<std::complex<double>> {
  using type = CompensatedComplexSum;
};

template <class Range>
double compensated_total(const Range& values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

}  // namespace mtoeplitz
