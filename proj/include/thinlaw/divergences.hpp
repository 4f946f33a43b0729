#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Relative tolerance used to decide whether mean(P) matches λ/α.
inline constexpr double kMeanMatchTolerance = 1e-6;

/// Right-hand side of a closed-form bound, split into its named terms.
/// When applicable, value equals the sum of the components.
struct BoundReport {
  double value = 0.0;
  std::map<std::string, double> components;
  bool applicable = true;
  std::string reason;
};

BoundReport not_applicable(std::string reason);

/// D(P‖Q) in nats, +∞ when P charges a point Q does not.
Estimate kl(const Pmf& p, const Pmf& q);
/// Half-sum total variation ½Σ|P-Q|.
Estimate tv(const Pmf& p, const Pmf& q);
/// χ²(P,Q) = Σ (P-Q)²/Q, +∞ when P charges a point Q does not.
Estimate chi2(const Pmf& p, const Pmf& q);

// Same functionals against the exact Po(λ) masses, evaluated in log space so
// that reference masses below the double range do not fake an infinite
// divergence. Sums run over the stored support of P; tv and chi2 also add the
// exact contribution of the Poisson mass beyond it, where P vanishes.
Estimate kl_poisson(const Pmf& p, double lambda);
Estimate tv_poisson(const Pmf& p, double lambda);
Estimate chi2_poisson(const Pmf& p, double lambda);

/// α²/(2(1-α)) + E[αX log(αX/λ)], valid when mean(P) = λ/α.
BoundReport bound_llogl(const Pmf& p, double alpha, double lambda);

/// α²(1/(2(1-α)) + σ²/λ), valid when mean(P) = λ/α.
BoundReport bound_variance(const Pmf& p, double alpha, double lambda);
/// Same bound from the mean and variance of the distribution being thinned.
BoundReport bound_variance(double mean, double variance, double alpha, double lambda);

/// Total variation bound for T_{1/n}(P^{*n}) against Po(mean(P)):
/// 1/(n√2) + (σ/√n) min{1, 1/(2√λ)}. Requires n ≥ 2.
BoundReport bound_tv(const Pmf& p, std::size_t n);
BoundReport bound_tv(double mean, double variance, std::size_t n);

/// ‖Bin(m,t) - Po(λ)‖ ≤ t/√2 + |mt - λ| min{1, 1/(2√λ)} for m ≥ 1, t ∈ (0, 1/2].
BoundReport bound_yannaros(std::size_t m, double t, double lambda);

/// ‖Po(λ) - Po(μ)‖ ≤ 2(1 - e^{-|λ-μ|}), the coupling bound as published.
BoundReport poisson_tv_bound(double lambda, double mu);
/// 1 - e^{-|λ-μ|}: the same coupling argument under the half-sum convention.
double poisson_tv_bound_half_sum(double lambda, double mu);

}  // namespace thinlaw
