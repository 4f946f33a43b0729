#include "thinlaw/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"
#include "thinlaw/thinning.hpp"

namespace thinlaw {

namespace {

void canonicalize(std::vector<double>& probs, double& tail) {
  for (double& v : probs) {
    if (v < kTrimThreshold) v = v > 0.0 ? v : 0.0;
  }
  CompensatedSum trimmed;
  while (probs.size() > 1 && probs.back() < kTrimThreshold) {
    trimmed += probs.back();
    probs.pop_back();
  }
  if (probs.empty()) probs.push_back(0.0);
  tail += trimmed.value();
}

void check_eps_tail(double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail <= 1e-3)) {
    throw ParameterError("eps_tail must lie in (0, 1e-3]");
  }
}

// Walks x = 0, 1, ... until the family-specific tail bound for the mass
// beyond x drops below eps_tail and at least min_size points are stored.
// tail_bound(x, next) receives the mass at x + 1 and returns an upper bound
// on the mass beyond x, or +inf while no bound is available yet.
template <class LogPmf, class TailBound>
Pmf truncated_family(LogPmf log_pmf, TailBound tail_bound, double eps_tail,
                     std::size_t min_size) {
  std::vector<double> probs;
  CompensatedSum total;
  double next = std::exp(log_pmf(0));
  for (std::size_t x = 0;; ++x) {
    if (x >= kMaxSupport) {
      throw ResourceError("family truncation exceeds the support limit");
    }
    const double here = next;
    probs.push_back(here);
    total += here;
    next = std::exp(log_pmf(x + 1));
    const double bound = tail_bound(x, next);
    if (bound <= eps_tail && probs.size() >= min_size) {
      // Never report an empty tail for an infinite family: the next mass is a
      // lower bound for what was cut.
      double tail = std::max(std::clamp(1.0 - total.value(), 0.0, bound), next);
      if (tail == 0.0) tail = std::min(bound, kTrimThreshold);
      return make_pmf_unchecked(std::move(probs), tail);
    }
  }
}

Pmf poisson_masses(double lambda, double eps_tail, std::size_t min_size) {
  return truncated_family(
      [lambda](std::size_t x) { return log_poisson_pmf(lambda, x); },
      [lambda](std::size_t x, double next) {
        // Ratios λ/(y+1) decrease, so the tail is dominated by a geometric
        // series once they drop below one.
        const double ratio = lambda / static_cast<double>(x + 2);
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return next / (1.0 - ratio);
      },
      eps_tail, min_size);
}

Pmf geometric_masses(double mean, double eps_tail, std::size_t min_size) {
  const double log_ratio = std::log(mean) - std::log1p(mean);
  const double log_first = -std::log1p(mean);
  return truncated_family(
      [=](std::size_t x) { return log_first + static_cast<double>(x) * log_ratio; },
      [=](std::size_t x, double) {
        return std::exp(static_cast<double>(x + 1) * log_ratio);
      },
      eps_tail, min_size);
}

Pmf negative_binomial_masses(double r, double mean, double eps_tail,
                             std::size_t min_size) {
  const double q = mean / (r + mean);
  const double log_q = std::log(q);
  const double log_base = r * std::log1p(-q) - std::lgamma(r);
  return truncated_family(
      [=](std::size_t x) {
        const double xd = static_cast<double>(x);
        return log_base + std::lgamma(xd + r) - std::lgamma(xd + 1.0) + xd * log_q;
      },
      [=](std::size_t x, double next) {
        // p(y+1)/p(y) = q (y + r)/(y + 1) is nonincreasing in y for r ≥ 1.
        const double y = static_cast<double>(x + 1);
        const double ratio = q * (y + r) / (y + 1.0);
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return next / (1.0 - ratio);
      },
      eps_tail, min_size);
}

Pmf binomial_masses(std::size_t n, double p) {
  if (n + 1 > kMaxSupport) throw ResourceError("binomial support exceeds the limit");
  if (p == 0.0) return Pmf::point_mass(0);
  if (p == 1.0) return Pmf::point_mass(n);
  std::vector<double> probs(n + 1);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (std::size_t x = 0; x <= n; ++x) {
    probs[x] = std::exp(log_binomial_coefficient(n, x) + static_cast<double>(x) * lp +
                        static_cast<double>(n - x) * lq);
  }
  CompensatedSum total;
  for (double v : probs) total += v;
  for (double& v : probs) v /= total.value();
  return make_pmf_unchecked(std::move(probs), 0.0);
}

}  // namespace

Pmf::Pmf(std::vector<double> probs, double tail) : probs_(std::move(probs)), tail_(tail) {
  if (probs_.empty()) throw ParameterError("Pmf needs at least one mass");
  if (probs_.size() > kMaxSupport) throw ResourceError("Pmf support exceeds the limit");
  if (!(std::isfinite(tail_) && tail_ >= 0.0)) {
    throw ParameterError("Pmf tail must be finite and nonnegative");
  }
  CompensatedSum total;
  for (double v : probs_) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw ParameterError("Pmf masses must be finite and nonnegative");
    }
    total += v;
  }
  total += tail_;
  if (std::abs(total.value() - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg << "Pmf masses plus tail sum to " << total.value() << ", not 1";
    throw ParameterError(msg.str());
  }
  canonicalize(probs_, tail_);
}

Pmf::Pmf(Unchecked, std::vector<double> probs, double tail)
    : probs_(std::move(probs)), tail_(tail) {
  if (probs_.size() > kMaxSupport) throw ResourceError("Pmf support exceeds the limit");
  canonicalize(probs_, tail_);
}

Pmf make_pmf_unchecked(std::vector<double> probs, double tail) {
  return Pmf(Pmf::Unchecked{}, std::move(probs), tail > 0.0 ? tail : 0.0);
}

Pmf Pmf::point_mass(std::size_t k) {
  if (k + 1 > kMaxSupport) throw ResourceError("point mass beyond the support limit");
  std::vector<double> probs(k + 1, 0.0);
  probs[k] = 1.0;
  return Pmf(Unchecked{}, std::move(probs), 0.0);
}

double Pmf::stored_mass() const { return compensated_sum(probs_); }

void validate(const FamilySpec& spec) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::Bernoulli>) {
          if (!(f.p >= 0.0 && f.p <= 1.0)) throw ParameterError("Bernoulli p must lie in [0,1]");
        } else if constexpr (std::is_same_v<T, family::Binomial>) {
          if (!(f.p >= 0.0 && f.p <= 1.0)) throw ParameterError("Binomial p must lie in [0,1]");
        } else if constexpr (std::is_same_v<T, family::Geometric>) {
          if (!(f.mean > 0.0 && std::isfinite(f.mean))) {
            throw ParameterError("Geometric mean must be positive");
          }
        } else if constexpr (std::is_same_v<T, family::NegativeBinomial>) {
          if (!(f.r >= 1.0 && std::isfinite(f.r))) {
            throw ParameterError("NegativeBinomial r must be at least 1");
          }
          if (!(f.mean > 0.0 && std::isfinite(f.mean))) {
            throw ParameterError("NegativeBinomial mean must be positive");
          }
        } else if constexpr (std::is_same_v<T, family::Poisson>) {
          if (!(f.lambda > 0.0 && std::isfinite(f.lambda))) {
            throw ParameterError("Poisson lambda must be positive");
          }
        } else if constexpr (std::is_same_v<T, family::CompoundPoisson>) {
          if (!(f.lambda > 0.0 && std::isfinite(f.lambda))) {
            throw ParameterError("CompoundPoisson lambda must be positive");
          }
          if (f.compounder[0] != 0.0) {
            throw ParameterError("CompoundPoisson compounder must have no mass at 0");
          }
        }
      },
      spec);
}

std::string describe(const FamilySpec& spec) {
  std::ostringstream out;
  out.precision(12);
  std::visit(
      [&out](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PointMass>) {
          out << "point(" << f.k << ")";
        } else if constexpr (std::is_same_v<T, family::Bernoulli>) {
          out << "bernoulli(" << f.p << ")";
        } else if constexpr (std::is_same_v<T, family::Binomial>) {
          out << "binomial(" << f.n << "," << f.p << ")";
        } else if constexpr (std::is_same_v<T, family::Geometric>) {
          out << "geometric(" << f.mean << ")";
        } else if constexpr (std::is_same_v<T, family::NegativeBinomial>) {
          out << "negbin(" << f.r << "," << f.mean << ")";
        } else if constexpr (std::is_same_v<T, family::Poisson>) {
          out << "poisson(" << f.lambda << ")";
        } else if constexpr (std::is_same_v<T, family::CompoundPoisson>) {
          out << "cpoisson(" << f.lambda << ",support=" << f.compounder.size() << ")";
        } else {
          out << "empirical(support=" << f.pmf.size() << ")";
        }
      },
      spec);
  return out.str();
}

Pmf materialize(const FamilySpec& spec, double eps_tail, std::size_t min_size) {
  check_eps_tail(eps_tail);
  validate(spec);
  return std::visit(
      [&](const auto& f) -> Pmf {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PointMass>) {
          return Pmf::point_mass(f.k);
        } else if constexpr (std::is_same_v<T, family::Bernoulli>) {
          return make_pmf_unchecked({1.0 - f.p, f.p}, 0.0);
        } else if constexpr (std::is_same_v<T, family::Binomial>) {
          return binomial_masses(f.n, f.p);
        } else if constexpr (std::is_same_v<T, family::Geometric>) {
          return geometric_masses(f.mean, eps_tail, min_size);
        } else if constexpr (std::is_same_v<T, family::NegativeBinomial>) {
          return negative_binomial_masses(f.r, f.mean, eps_tail, min_size);
        } else if constexpr (std::is_same_v<T, family::Poisson>) {
          return poisson_masses(f.lambda, eps_tail, min_size);
        } else if constexpr (std::is_same_v<T, family::CompoundPoisson>) {
          return compound_poisson(f.lambda, f.compounder, eps_tail, min_size);
        } else {
          return f.pmf;
        }
      },
      spec);
}

Pmf convolve(const Pmf& p, const Pmf& q) {
  const std::size_t n = p.size() + q.size() - 1;
  if (n > kMaxSupport) throw ResourceError("convolution support exceeds the limit");
  std::vector<double> out(n, 0.0);
  const auto a = p.probs();
  const auto b = q.probs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    double* dst = out.data() + i;
    for (std::size_t j = 0; j < b.size(); ++j) dst[j] += ai * b[j];
  }
  return make_pmf_unchecked(std::move(out), p.tail() + q.tail() - p.tail() * q.tail());
}

Pmf n_fold(const Pmf& p, std::size_t n) {
  if (n == 0) return Pmf::point_mass(0);
  std::optional<Pmf> result;
  Pmf base = p;
  while (true) {
    if (n & 1U) result = result ? convolve(*result, base) : base;
    n >>= 1U;
    if (n == 0) break;
    base = convolve(base, base);
  }
  return *result;
}

Estimate factorial_moment(const Pmf& p, std::size_t k) {
  CompensatedSum s;
  const auto probs = p.probs();
  for (std::size_t x = k; x < probs.size(); ++x) {
    if (probs[x] != 0.0) s += probs[x] * falling_factorial(x, k);
  }
  return {s.value(), p.tail() * falling_factorial(p.size(), k)};
}

std::vector<double> factorial_moments(const Pmf& p, std::size_t kmax) {
  std::vector<CompensatedSum> sums(kmax + 1);
  const auto probs = p.probs();
  for (std::size_t x = 0; x < probs.size(); ++x) {
    const double px = probs[x];
    if (px == 0.0) continue;
    double ff = 1.0;
    for (std::size_t k = 0; k <= std::min(kmax, x); ++k) {
      sums[k] += px * ff;
      ff *= static_cast<double>(x - k);
    }
  }
  std::vector<double> out(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) out[k] = sums[k].value();
  return out;
}

SummaryStats summary_stats(const Pmf& p) {
  const auto probs = p.probs();
  CompensatedSum m;
  for (std::size_t x = 1; x < probs.size(); ++x) m += probs[x] * static_cast<double>(x);
  const double mean = m.value();
  CompensatedSum v;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    const double d = static_cast<double>(x) - mean;
    v += probs[x] * d * d;
  }
  return {mean, v.value()};
}

Estimate entropy(const Pmf& p) {
  CompensatedSum s;
  for (double v : p.probs()) {
    if (v > 0.0) s += -v * std::log(v);
  }
  const double t = p.tail();
  const double err =
      t > 0.0 ? t * (1.0 - std::log(t) + std::log(static_cast<double>(p.size()) + 1.0)) : 0.0;
  return {s.value(), err};
}

}  // namespace thinlaw
