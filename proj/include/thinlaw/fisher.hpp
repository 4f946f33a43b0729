#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Scaled score ρ(x) = (x+1)P(x+1)/(λP(x)) − 1 with λ the mean of P.
struct ScoreVector {
  double lambda = 0.0;
  /// Indexed by x over the stored support; NaN where P(x) = 0.
  std::vector<double> rho;
  /// Points x with P(x) = 0 < P(x+1), where the score is undefined.
  std::vector<std::size_t> gaps;
  bool contiguous() const { return gaps.empty(); }
  std::string note() const;
};

/// Throws ParameterError when mean(P) = 0.
ScoreVector score(const Pmf& p);

/// K(P) = λ E[ρ(X)²].
double k_info(const Pmf& p);

/// S(Y) = Σ_y Q(y+1)(y+1)/μ · (Q(y+1)(y+1)/Q(y) − Q(y+2)(y+2)/Q(y+1))², terms
/// with a zero denominator dropped.
double s_info(const Pmf& p);

/// ∂/∂α T_α(P)(x) = (1/α)[x T_αP(x) − (x+1) T_αP(x+1)], for α ∈ (0, 1].
std::vector<double> thin_derivative(const Pmf& p, double alpha);

struct RateRow {
  double alpha = 0.0;
  double k = 0.0;
  double k_scaled = 0.0;
};

struct RateLimit {
  double lambda = 0.0;
  /// Smallest k ≥ 1 with a nonzero Charlier moment; absent for a law that is
  /// Poisson up to the checked order, in which case scaling uses exponent 2.
  std::optional<std::size_t> kappa;
  double c = 0.0;
  /// κ c², the limit of K(T_αP)/α^κ as α → 0.
  double limit = 0.0;
  std::vector<RateRow> rows;
};

/// Exponent used for α^κ and n^κ scalings.
std::size_t rate_exponent(const RateLimit& r);

/// κ, c and κc² for P against λ = mean(P), behind the UB gate.
RateLimit rate_constants(const Pmf& p, double lambda);

/// Rows (α, K(T_αP), K/α^κ) over a grid decreasing toward 0. P must have mean
/// λ and be UB with ratio λ; throws HypothesisError otherwise.
RateLimit k_rate_limit(const Pmf& p, double lambda, std::span<const double> alpha_grid);

}  // namespace thinlaw
