#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

inline constexpr std::size_t kDefaultCharlierKmax = 24;
inline constexpr double kDefaultKappaTol = 1e-9;

/// Charlier moments c_k = E[P_k^λ(X)] for k = 0..kmax.
struct CharlierCoeffs {
  double lambda = 1.0;
  std::vector<double> coeffs;
  std::size_t kmax = 0;
  /// Tail mass of the Pmf the moments were taken from, and a note on what the
  /// truncation means for the coefficients.
  double source_tail = 0.0;
  std::string trunc_note;
  /// PB ratio certified for the source, 0 when no certificate was requested.
  double pb_ratio = 0.0;
};

/// Orthonormal Poisson–Charlier polynomial P_k^λ(x), evaluated by the
/// three-term recurrence from P_0 ≡ 1.
double charlier_eval(std::size_t k, double lambda, std::size_t x);

/// table[k][x] = P_k^λ(x) for k ≤ kmax, x ≤ xmax.
std::vector<std::vector<double>> charlier_table(std::size_t kmax, double lambda,
                                                std::size_t xmax);

/// (λ^k k!)^{-1/2} Σ_ℓ (−λ)^{k−ℓ} C(k,ℓ) x(x−1)...(x−ℓ+1). Loses digits to
/// cancellation at large x; kept for cross-checks.
double charlier_eval_sum(std::size_t k, double lambda, std::size_t x);

/// E[P_k^λ(X)] from the factorial moments of P.
double charlier_moment(const Pmf& p, double lambda, std::size_t k);

/// E[P_k^λ(X)] by pointwise summation over the stored support.
double charlier_moment_direct(const Pmf& p, double lambda, std::size_t k);

/// c_0..c_kmax by pointwise summation, no class gate.
CharlierCoeffs charlier_moments(const Pmf& p, double lambda, std::size_t kmax);

/// Smallest k in [1, kmax] with |c_k| > tol.
std::optional<std::size_t> find_kappa(const CharlierCoeffs& coeffs,
                                      double tol = kDefaultKappaTol);

/// Coefficients of P(x)/Po(λ,x) = Σ_k c_k P_k^λ(x). P must be Poisson
/// bounded; throws HypothesisError otherwise.
CharlierCoeffs lr_coefficients(const Pmf& p, double lambda,
                               std::size_t kmax = kDefaultCharlierKmax);

/// Partial sum Σ_{k ≤ kmax} c_k P_k^λ(x).
double reconstruct_ratio(const CharlierCoeffs& coeffs, std::size_t x);

/// Σ_{k=1}^{kmax} α^{2k} c_k².
double chi2_series(const CharlierCoeffs& coeffs, double alpha);

/// Upper bound on Σ_{k>kmax} α^{2k} c_k² from |c_k| ≤ (λ+μ)^k/√(λ^k k!), μ
/// the PB ratio. Infinite when no ratio is attached.
double chi2_series_tail_bound(const CharlierCoeffs& coeffs, double alpha);

}  // namespace thinlaw
