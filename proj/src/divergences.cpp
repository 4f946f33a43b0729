#include "thinlaw/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"

namespace thinlaw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// p log(p/q), switching to log1p when the ratio is close to one so that
// near-identical pairs keep their second-order accuracy.
double kl_term(double p, double q) {
  const double d = (p - q) / q;
  if (std::abs(d) < 0.5) return p * std::log1p(d);
  return p * (std::log(p) - std::log(q));
}

// Mass of Po(λ) on {from, from+1, ...}.
double poisson_mass_from(double lambda, std::size_t from) {
  if (from == 0) return 1.0;
  CompensatedSum below;
  for (std::size_t x = 0; x < from; ++x) below += poisson_pmf(lambda, x);
  const double complement = 1.0 - below.value();
  if (complement > 1e-3) return complement;
  CompensatedSum above;
  for (std::size_t x = from; x < from + kMaxSupport; ++x) {
    const double v = poisson_pmf(lambda, x);
    above += v;
    if (v < kTrimThreshold && static_cast<double>(x) > lambda) break;
  }
  return above.value();
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && std::isfinite(lambda))) {
    throw ParameterError("lambda must be positive");
  }
}

void check_open_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
}

std::string mean_mismatch(double mean, double target) {
  return "mean " + std::to_string(mean) + " does not match lambda/alpha = " +
         std::to_string(target);
}

bool mean_matches(double mean, double target) {
  return std::abs(mean - target) <= kMeanMatchTolerance * std::abs(target);
}

double tv_spread_factor(double lambda) {
  return lambda > 0.0 ? std::min(1.0, 1.0 / (2.0 * std::sqrt(lambda))) : 1.0;
}

BoundReport from_components(std::map<std::string, double> components) {
  BoundReport r;
  CompensatedSum s;
  for (const auto& [name, v] : components) s += v;
  r.value = s.value();
  r.components = std::move(components);
  return r;
}

}  // namespace

BoundReport not_applicable(std::string reason) {
  BoundReport r;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

Estimate kl(const Pmf& p, const Pmf& q) {
  CompensatedSum s;
  const auto a = p.probs();
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == 0.0) continue;
    const double qx = q[x];
    if (qx == 0.0) return {kInf, 0.0};
    s += kl_term(a[x], qx);
  }
  return {s.value(), p.tail() + q.tail()};
}

Estimate tv(const Pmf& p, const Pmf& q) {
  CompensatedSum s;
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t x = 0; x < n; ++x) s += std::abs(p[x] - q[x]);
  return {0.5 * s.value(), 0.5 * (p.tail() + q.tail())};
}

Estimate chi2(const Pmf& p, const Pmf& q) {
  CompensatedSum s;
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t x = 0; x < n; ++x) {
    const double px = p[x];
    const double qx = q[x];
    if (qx == 0.0) {
      if (px > 0.0) return {kInf, 0.0};
      continue;
    }
    const double d = px - qx;
    s += d * d / qx;
  }
  return {s.value(), p.tail() + q.tail()};
}

Estimate kl_poisson(const Pmf& p, double lambda) {
  check_lambda(lambda);
  CompensatedSum s;
  const auto a = p.probs();
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == 0.0) continue;
    const double log_q = log_poisson_pmf(lambda, x);
    const double qx = std::exp(log_q);
    s += qx > 0.0 ? kl_term(a[x], qx) : a[x] * (std::log(a[x]) - log_q);
  }
  return {s.value(), p.tail() + poisson_mass_from(lambda, p.size())};
}

Estimate tv_poisson(const Pmf& p, double lambda) {
  check_lambda(lambda);
  CompensatedSum s;
  const auto a = p.probs();
  for (std::size_t x = 0; x < a.size(); ++x) s += std::abs(a[x] - poisson_pmf(lambda, x));
  s += poisson_mass_from(lambda, a.size());
  return {0.5 * s.value(), 0.5 * p.tail()};
}

Estimate chi2_poisson(const Pmf& p, double lambda) {
  check_lambda(lambda);
  CompensatedSum s;
  const auto a = p.probs();
  for (std::size_t x = 0; x < a.size(); ++x) {
    const double log_q = log_poisson_pmf(lambda, x);
    const double qx = std::exp(log_q);
    if (qx > 0.0) {
      const double d = a[x] - qx;
      s += d * d / qx;
    } else if (a[x] > 0.0) {
      s += std::exp(2.0 * std::log(a[x]) - log_q);
    }
  }
  // Beyond the stored support P vanishes and each point contributes Po(λ, x).
  s += poisson_mass_from(lambda, a.size());
  return {s.value(), p.tail()};
}

BoundReport bound_llogl(const Pmf& p, double alpha, double lambda) {
  check_open_alpha(alpha);
  check_lambda(lambda);
  const double mean = summary_stats(p).mean;
  if (!mean_matches(mean, lambda / alpha)) {
    return not_applicable(mean_mismatch(mean, lambda / alpha));
  }
  CompensatedSum e;
  const auto a = p.probs();
  for (std::size_t x = 1; x < a.size(); ++x) {
    if (a[x] == 0.0) continue;
    const double ax = alpha * static_cast<double>(x);
    e += a[x] * ax * std::log(ax / lambda);
  }
  return from_components({{"alpha_sq_term", alpha * alpha / (2.0 * (1.0 - alpha))},
                          {"llogl_term", e.value()}});
}

BoundReport bound_variance(double mean, double variance, double alpha, double lambda) {
  check_open_alpha(alpha);
  check_lambda(lambda);
  if (!(variance >= 0.0 && std::isfinite(variance))) {
    throw ParameterError("variance must be finite and nonnegative");
  }
  if (!mean_matches(mean, lambda / alpha)) {
    return not_applicable(mean_mismatch(mean, lambda / alpha));
  }
  return from_components({{"alpha_sq_term", alpha * alpha / (2.0 * (1.0 - alpha))},
                          {"variance_term", alpha * alpha * variance / lambda}});
}

BoundReport bound_variance(const Pmf& p, double alpha, double lambda) {
  const auto stats = summary_stats(p);
  return bound_variance(stats.mean, stats.variance, alpha, lambda);
}

BoundReport bound_tv(double mean, double variance, std::size_t n) {
  if (n < 2) throw ParameterError("bound_tv needs n >= 2");
  if (!(mean >= 0.0 && variance >= 0.0 && std::isfinite(mean) && std::isfinite(variance))) {
    throw ParameterError("bound_tv needs a finite mean and variance");
  }
  const double nd = static_cast<double>(n);
  return from_components(
      {{"binomial_term", 1.0 / (nd * std::sqrt(2.0))},
       {"spread_term", std::sqrt(variance) / std::sqrt(nd) * tv_spread_factor(mean)}});
}

BoundReport bound_tv(const Pmf& p, std::size_t n) {
  const auto stats = summary_stats(p);
  return bound_tv(stats.mean, stats.variance, n);
}

BoundReport bound_yannaros(std::size_t m, double t, double lambda) {
  if (m < 1) throw ParameterError("bound_yannaros needs m >= 1");
  if (!(t > 0.0 && t <= 0.5)) throw ParameterError("bound_yannaros needs t in (0, 1/2]");
  check_lambda(lambda);
  return from_components(
      {{"t_term", t / std::sqrt(2.0)},
       {"mean_gap_term",
        std::abs(static_cast<double>(m) * t - lambda) * tv_spread_factor(lambda)}});
}

BoundReport poisson_tv_bound(double lambda, double mu) {
  check_lambda(lambda);
  check_lambda(mu);
  return from_components({{"coupling_term", -2.0 * std::expm1(-std::abs(lambda - mu))}});
}

double poisson_tv_bound_half_sum(double lambda, double mu) {
  check_lambda(lambda);
  check_lambda(mu);
  return -std::expm1(-std::abs(lambda - mu));
}

}  // namespace thinlaw
