#include "thinlaw/fisher.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "thinlaw/charlier.hpp"
#include "thinlaw/classes.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"
#include "thinlaw/parallel.hpp"
#include "thinlaw/thinning.hpp"

namespace thinlaw {

std::string ScoreVector::note() const {
  if (contiguous()) return {};
  std::ostringstream out;
  out << "non-contiguous support: score undefined at x =";
  for (auto g : gaps) out << ' ' << g;
  return out.str();
}

ScoreVector score(const Pmf& p) {
  const double lambda = summary_stats(p).mean;
  if (!(lambda > 0.0)) throw ParameterError("score needs a positive mean");
  const auto a = p.probs();
  ScoreVector s;
  s.lambda = lambda;
  s.rho.assign(a.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t x = 0; x < a.size(); ++x) {
    const double next = x + 1 < a.size() ? a[x + 1] : 0.0;
    if (a[x] > 0.0) {
      s.rho[x] = static_cast<double>(x + 1) * next / (lambda * a[x]) - 1.0;
    } else if (next > 0.0) {
      s.gaps.push_back(x);
    }
  }
  return s;
}

double k_info(const Pmf& p) {
  const auto s = score(p);
  const auto a = p.probs();
  CompensatedSum k;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] > 0.0) k += a[x] * s.rho[x] * s.rho[x];
  }
  return s.lambda * k.value();
}

double s_info(const Pmf& p) {
  const double mu = summary_stats(p).mean;
  if (!(mu > 0.0)) throw ParameterError("s_info needs a positive mean");
  const auto a = p.probs();
  auto q = [&](std::size_t y) { return y < a.size() ? a[y] : 0.0; };
  CompensatedSum s;
  for (std::size_t y = 0; y + 1 < a.size(); ++y) {
    const double up = q(y + 1) * static_cast<double>(y + 1);
    if (a[y] == 0.0 || up == 0.0) continue;
    const double r0 = up / a[y];
    const double r1 = q(y + 2) * static_cast<double>(y + 2) / q(y + 1);
    const double d = r0 - r1;
    s += up / mu * d * d;
  }
  return s.value();
}

std::vector<double> thin_derivative(const Pmf& p, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0,1]");
  const auto t = thin(p, alpha);
  const auto a = t.probs();
  std::vector<double> d(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    d[x] = (static_cast<double>(x) * a[x] - static_cast<double>(x + 1) * t[x + 1]) / alpha;
  }
  return d;
}

std::size_t rate_exponent(const RateLimit& r) { return r.kappa.value_or(2); }

RateLimit rate_constants(const Pmf& p, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  const double mean = summary_stats(p).mean;
  if (std::abs(mean - lambda) > kMeanMatchTolerance * lambda) {
    std::ostringstream msg;
    msg << "hypothesis violated: rate limit needs lambda = mean(P) (mean " << mean
        << ", lambda " << lambda << ")";
    throw HypothesisError(msg.str());
  }
  const auto cert = is_ub(p, lambda);
  if (!cert.holds) {
    std::ostringstream msg;
    msg << "hypothesis violated: is_ub(ratio " << lambda << ") failed";
    if (cert.witness) {
      msg << " at k = " << cert.witness->index << " (" << cert.witness->lhs << " > "
          << cert.witness->rhs << ")";
    }
    throw HypothesisError(msg.str());
  }
  RateLimit r;
  r.lambda = lambda;
  const auto coeffs = charlier_moments(p, lambda, kDefaultCharlierKmax);
  r.kappa = find_kappa(coeffs);
  if (r.kappa) {
    r.c = coeffs.coeffs[*r.kappa];
    r.limit = static_cast<double>(*r.kappa) * r.c * r.c;
  }
  return r;
}

RateLimit k_rate_limit(const Pmf& p, double lambda, std::span<const double> alpha_grid) {
  auto r = rate_constants(p, lambda);
  const auto e = static_cast<double>(rate_exponent(r));
  r.rows = parallel_map<RateRow>(alpha_grid.size(), [&](std::size_t i) {
    const double alpha = alpha_grid[i];
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0,1]");
    RateRow row;
    row.alpha = alpha;
    row.k = k_info(thin(p, alpha));
    row.k_scaled = row.k / std::pow(alpha, e);
    return row;
  });
  return r;
}

}  // namespace thinlaw
