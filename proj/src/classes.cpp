#include "thinlaw/classes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"

namespace thinlaw {

namespace {

// lhs ≤ rhs fails beyond the relative slack.
bool exceeds(double lhs, double rhs) {
  return lhs - rhs > kClassSlack * std::max(std::abs(lhs), std::abs(rhs));
}

std::string truncation_note(const Pmf& p, std::size_t kmax) {
  std::ostringstream out;
  out << "checked for k <= " << kmax << " on a support truncated at " << p.max_index()
      << " (tail " << p.tail() << ")";
  return out.str();
}

}  // namespace

std::string to_string(DistributionClass c) {
  switch (c) {
    case DistributionClass::BernoulliSum: return "BernoulliSum";
    case DistributionClass::ULC: return "ULC";
    case DistributionClass::UB: return "UB";
    case DistributionClass::PB: return "PB";
  }
  return "unknown";
}

ClassCertificate is_ulc(const Pmf& p) {
  ClassCertificate cert;
  cert.class_name = DistributionClass::ULC;
  cert.ratio = summary_stats(p).mean;
  cert.kmax_checked = p.max_index();
  cert.complete = p.tail() == 0.0;
  if (!cert.complete) cert.note = "checked on the stored support only";
  const auto probs = p.probs();
  std::size_t first = 0;
  while (first < probs.size() && probs[first] == 0.0) ++first;
  for (std::size_t j = first + 1; j < probs.size(); ++j) {
    if (probs[j] == 0.0) {
      // Inside the support hull a zero breaks log-concavity outright.
      const bool later = std::any_of(probs.begin() + static_cast<std::ptrdiff_t>(j),
                                     probs.end(), [](double v) { return v > 0.0; });
      if (later) {
        cert.holds = false;
        cert.witness = Witness{j, 0.0, probs[j - 1]};
        cert.note = "support is not an interval";
        return cert;
      }
      break;
    }
    if (j + 1 >= probs.size()) break;
    const double lhs = static_cast<double>(j) * probs[j] * probs[j];
    const double rhs = static_cast<double>(j + 1) * probs[j - 1] * probs[j + 1];
    if (exceeds(rhs, lhs)) {
      cert.holds = false;
      cert.witness = Witness{j, lhs, rhs};
      return cert;
    }
  }
  cert.holds = true;
  return cert;
}

ClassCertificate is_pb(const Pmf& p, double lambda, std::size_t kmax) {
  if (!(lambda > 0.0)) throw ParameterError("PB ratio must be positive");
  if (kmax < 1) throw ParameterError("kmax must be at least 1");
  ClassCertificate cert;
  cert.class_name = DistributionClass::PB;
  cert.ratio = lambda;
  cert.kmax_checked = kmax;
  cert.complete = p.tail() == 0.0 && kmax >= p.max_index();
  if (!cert.complete) cert.note = truncation_note(p, kmax);
  const auto fm = factorial_moments(p, kmax);
  double power = 1.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    if (exceeds(fm[k], power)) {
      cert.holds = false;
      cert.witness = Witness{k, fm[k], power};
      return cert;
    }
    power *= lambda;
  }
  cert.holds = true;
  return cert;
}

ClassCertificate is_ub(const Pmf& p, double lambda, std::size_t kmax) {
  if (!(lambda > 0.0)) throw ParameterError("UB ratio must be positive");
  if (kmax < 1) throw ParameterError("kmax must be at least 1");
  ClassCertificate cert;
  cert.class_name = DistributionClass::UB;
  cert.ratio = lambda;
  cert.kmax_checked = kmax;
  cert.complete = p.tail() == 0.0 && kmax >= p.max_index();
  if (!cert.complete) cert.note = truncation_note(p, kmax);
  const auto fm = factorial_moments(p, kmax);
  for (std::size_t k = 0; k < kmax; ++k) {
    if (exceeds(fm[k + 1], lambda * fm[k])) {
      cert.holds = false;
      cert.witness = Witness{k, fm[k + 1], lambda * fm[k]};
      return cert;
    }
  }
  cert.holds = true;
  return cert;
}

ClassCertificate is_bernoulli_sum(const FamilySpec& spec) {
  ClassCertificate cert;
  cert.class_name = DistributionClass::BernoulliSum;
  cert.complete = true;
  std::visit(
      [&cert](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::PointMass>) {
          cert.holds = true;
          cert.ratio = static_cast<double>(f.k);
        } else if constexpr (std::is_same_v<T, family::Bernoulli>) {
          cert.holds = true;
          cert.ratio = f.p;
        } else if constexpr (std::is_same_v<T, family::Binomial>) {
          cert.holds = true;
          cert.ratio = static_cast<double>(f.n) * f.p;
        } else {
          cert.holds = false;
          cert.complete = false;
          cert.note = "membership is only decided constructively for point, Bernoulli and "
                      "binomial specs";
        }
      },
      spec);
  return cert;
}

Pmf bernoulli_sum(std::span<const double> ps) {
  Pmf out = Pmf::point_mass(0);
  for (double p : ps) out = convolve(out, materialize(family::Bernoulli{p}));
  return out;
}

double minimal_pb_ratio(const Pmf& p, std::size_t kmax) {
  const auto fm = factorial_moments(p, kmax);
  double mu = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (fm[k] > 0.0) mu = std::max(mu, std::pow(fm[k], 1.0 / static_cast<double>(k)));
  }
  return mu;
}

ClassCertificate require_poisson_bounded(const Pmf& p, double lambda, std::size_t kmax) {
  auto cert = is_pb(p, lambda, kmax);
  if (cert.holds) return cert;
  if (p.tail() == 0.0) {
    const std::size_t k_all = std::max(kmax, p.max_index());
    const double mu = minimal_pb_ratio(p, k_all);
    if (mu > 0.0) {
      auto finite = is_pb(p, mu, k_all);
      if (finite.holds) {
        finite.note = "finite support: Poisson bounded with its minimal ratio";
        return finite;
      }
    }
  }
  std::ostringstream msg;
  msg << "hypothesis violated: is_pb(ratio " << lambda << ") failed";
  if (cert.witness) {
    msg << " at k = " << cert.witness->index << " (E[X^k] = " << cert.witness->lhs
        << " > " << cert.witness->rhs << ")";
  }
  throw HypothesisError(msg.str());
}

AltSum altsum_pmf(std::span<const double> fact_moments, std::size_t x, std::size_t m) {
  if (fact_moments.size() <= x + m) {
    throw ParameterError("altsum_pmf needs factorial moments up to order x + m");
  }
  CompensatedSum s;
  double inv_l_fact = 1.0;
  for (std::size_t l = 0; l <= m; ++l) {
    if (l > 0) inv_l_fact /= static_cast<double>(l);
    const double term = fact_moments[x + l] * inv_l_fact;
    s += (l % 2 == 0) ? term : -term;
  }
  return {s.value() * std::exp(-log_factorial(x)),
          m % 2 == 0 ? BracketSide::Upper : BracketSide::Lower};
}

}  // namespace thinlaw
