#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace thinlaw {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double v : xs) s += v;
  return s.value();
}

/// x(x-1)...(x-k+1); zero once k > x.
inline double falling_factorial(std::size_t x, std::size_t k) {
  if (k > x) return 0.0;
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<double>(x - i);
  return r;
}

inline double log_factorial(std::size_t x) {
  return std::lgamma(static_cast<double>(x) + 1.0);
}

inline double log_binomial_coefficient(std::size_t n, std::size_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = k < n - k ? k : n - k;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

/// log Po(λ, x) for λ > 0.
inline double log_poisson_pmf(double lambda, std::size_t x) {
  return static_cast<double>(x) * std::log(lambda) - lambda - log_factorial(x);
}

inline double poisson_pmf(double lambda, std::size_t x) {
  if (lambda == 0.0) return x == 0 ? 1.0 : 0.0;
  return std::exp(log_poisson_pmf(lambda, x));
}

}  // namespace thinlaw
