#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Relative slack allowed on every class inequality.
inline constexpr double kClassSlack = 1e-12;
inline constexpr std::size_t kDefaultClassKmax = 30;

enum class DistributionClass { BernoulliSum, ULC, UB, PB };

std::string to_string(DistributionClass c);

/// Site where a class inequality lhs ≤ rhs (or lhs ≥ rhs for ULC) fails.
struct Witness {
  std::size_t index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ClassCertificate {
  DistributionClass class_name = DistributionClass::PB;
  bool holds = false;
  double ratio = 0.0;
  std::optional<Witness> witness;
  std::size_t kmax_checked = 0;
  /// True when the check covers every inequality of the class, not just the
  /// stored support or k ≤ kmax.
  bool complete = false;
  std::string note;
};

/// j P(j)² ≥ (j+1) P(j-1) P(j+1) at every interior j, plus an interval
/// support. ratio is the mean.
ClassCertificate is_ulc(const Pmf& p);

/// E[X^{k}] ≤ λ^k for k ≤ kmax.
ClassCertificate is_pb(const Pmf& p, double lambda, std::size_t kmax = kDefaultClassKmax);

/// E[X^{k+1}] ≤ λ E[X^{k}] for k < kmax.
ClassCertificate is_ub(const Pmf& p, double lambda, std::size_t kmax = kDefaultClassKmax);

/// Constructive Bernoulli-sum membership: true for point masses, Bernoulli
/// and binomial specs; other families are reported as undecided (holds =
/// false with a note).
ClassCertificate is_bernoulli_sum(const FamilySpec& spec);

/// Law of Σ Bern(p_i).
Pmf bernoulli_sum(std::span<const double> ps);

/// Smallest μ with E[X^{k}] ≤ μ^k for 1 ≤ k ≤ kmax.
double minimal_pb_ratio(const Pmf& p, std::size_t kmax = kDefaultClassKmax);

/// PB gate used by operations that need a Poisson-bounded input. Tries ratio
/// lambda first; a finite-support P is always PB with its minimal ratio.
/// Throws HypothesisError naming the failed check otherwise.
ClassCertificate require_poisson_bounded(const Pmf& p, double lambda,
                                         std::size_t kmax = kDefaultClassKmax);

enum class BracketSide { Upper, Lower };

struct AltSum {
  double value = 0.0;
  BracketSide side = BracketSide::Upper;
};

/// (1/x!) Σ_{ℓ=0}^{m} (-1)^ℓ E[X^{x+ℓ}]/ℓ!, an upper bound of P(x) for even m
/// and a lower bound for odd m when P is Poisson bounded. fact_moments must
/// hold indices 0..x+m.
AltSum altsum_pmf(std::span<const double> fact_moments, std::size_t x, std::size_t m);

}  // namespace thinlaw
