#pragma once

// Neumaier (improved Kahan-Babuska) compensated accumulation.

#include <cmath>
#include <complex>

namespace sievelab {

class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  CompensatedComplexSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }

  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace sievelab
