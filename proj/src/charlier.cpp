#include "thinlaw/charlier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thinlaw/classes.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"

namespace thinlaw {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("Charlier polynomials need lambda > 0");
  }
}

// One recurrence step applied in place to values at points 0..v.size()-1.
// Descending order keeps v[y-1] at the previous order when v[y] is updated.
void step(std::vector<double>& v, std::size_t lo, double lambda, std::size_t k) {
  const double scale = 1.0 / std::sqrt(lambda * static_cast<double>(k + 1));
  for (std::size_t i = v.size(); i-- > 0;) {
    const std::size_t y = lo + i;
    const double left = i > 0 ? v[i - 1] : 0.0;
    v[i] = (static_cast<double>(y) * left - lambda * v[i]) * scale;
  }
}

}  // namespace

double charlier_eval(std::size_t k, double lambda, std::size_t x) {
  check_lambda(lambda);
  // Only the window [x-k, x] feeds P_k(x). Below lo the neighbour is treated
  // as zero, which is exact at lo = 0 and otherwise corrupts only points that
  // fall out of the window one step later.
  const std::size_t lo = x > k ? x - k : 0;
  std::vector<double> v(x - lo + 1, 1.0);
  for (std::size_t j = 0; j < k; ++j) step(v, lo, lambda, j);
  return v.back();
}

std::vector<std::vector<double>> charlier_table(std::size_t kmax, double lambda,
                                                std::size_t xmax) {
  check_lambda(lambda);
  std::vector<std::vector<double>> table;
  table.reserve(kmax + 1);
  std::vector<double> v(xmax + 1, 1.0);
  table.push_back(v);
  for (std::size_t k = 0; k < kmax; ++k) {
    step(v, 0, lambda, k);
    table.push_back(v);
  }
  return table;
}

double charlier_eval_sum(std::size_t k, double lambda, std::size_t x) {
  check_lambda(lambda);
  CompensatedSum s;
  for (std::size_t l = 0; l <= k; ++l) {
    const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
    s += sign * std::pow(lambda, static_cast<double>(k - l)) * binomial_coefficient(k, l) *
         falling_factorial(x, l);
  }
  const double norm = 0.5 * (static_cast<double>(k) * std::log(lambda) + log_factorial(k));
  return s.value() * std::exp(-norm);
}

double charlier_moment(const Pmf& p, double lambda, std::size_t k) {
  check_lambda(lambda);
  const auto fm = factorial_moments(p, k);
  CompensatedSum s;
  for (std::size_t l = 0; l <= k; ++l) {
    const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
    s += sign * std::pow(lambda, static_cast<double>(k - l)) * binomial_coefficient(k, l) *
         fm[l];
  }
  const double norm = 0.5 * (static_cast<double>(k) * std::log(lambda) + log_factorial(k));
  return s.value() * std::exp(-norm);
}

double charlier_moment_direct(const Pmf& p, double lambda, std::size_t k) {
  return charlier_moments(p, lambda, k).coeffs[k];
}

CharlierCoeffs charlier_moments(const Pmf& p, double lambda, std::size_t kmax) {
  check_lambda(lambda);
  const auto table = charlier_table(kmax, lambda, p.max_index());
  const auto probs = p.probs();
  CharlierCoeffs out;
  out.lambda = lambda;
  out.kmax = kmax;
  out.coeffs.resize(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    CompensatedSum s;
    for (std::size_t x = 0; x < probs.size(); ++x) s += probs[x] * table[k][x];
    out.coeffs[k] = s.value();
  }
  out.source_tail = p.tail();
  if (p.tail() > 0.0) {
    std::ostringstream note;
    note << "moments over the stored support 0.." << p.max_index() << "; tail mass "
         << p.tail() << " omitted";
    out.trunc_note = note.str();
  }
  return out;
}

std::optional<std::size_t> find_kappa(const CharlierCoeffs& coeffs, double tol) {
  if (!(tol > 0.0)) throw ParameterError("find_kappa tolerance must be positive");
  for (std::size_t k = 1; k < coeffs.coeffs.size(); ++k) {
    if (std::abs(coeffs.coeffs[k]) > tol) return k;
  }
  return std::nullopt;
}

CharlierCoeffs lr_coefficients(const Pmf& p, double lambda, std::size_t kmax) {
  check_lambda(lambda);
  const auto cert = require_poisson_bounded(p, lambda);
  auto out = charlier_moments(p, lambda, kmax);
  out.pb_ratio = cert.ratio;
  return out;
}

double reconstruct_ratio(const CharlierCoeffs& coeffs, std::size_t x) {
  const auto table = charlier_table(coeffs.kmax, coeffs.lambda, x);
  CompensatedSum s;
  for (std::size_t k = 0; k <= coeffs.kmax; ++k) s += coeffs.coeffs[k] * table[k][x];
  return s.value();
}

double chi2_series(const CharlierCoeffs& coeffs, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
  CompensatedSum s;
  const double a2 = alpha * alpha;
  double w = 1.0;
  for (std::size_t k = 1; k < coeffs.coeffs.size(); ++k) {
    w *= a2;
    s += w * coeffs.coeffs[k] * coeffs.coeffs[k];
  }
  return s.value();
}

double chi2_series_tail_bound(const CharlierCoeffs& coeffs, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
  if (!(coeffs.pb_ratio > 0.0)) return std::numeric_limits<double>::infinity();
  if (alpha == 0.0) return 0.0;
  const double lambda = coeffs.lambda;
  // term_k = (α²(λ+μ)²/λ)^k / k!, summed in log space from k = kmax+1.
  const double log_r = 2.0 * std::log(alpha) + 2.0 * std::log(lambda + coeffs.pb_ratio) -
                       std::log(lambda);
  CompensatedSum s;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = coeffs.kmax + 1; k < coeffs.kmax + 100000; ++k) {
    const double term = std::exp(static_cast<double>(k) * log_r - log_factorial(k));
    s += term;
    if (term < prev && term <= 1e-17 * s.value()) break;
    prev = term;
  }
  return s.value();
}

}  // namespace thinlaw
