#pragma once

#include <cstddef>
#include <optional>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Thinning parameters: keep each unit with probability alpha and, when a
/// compounder is present, replace every kept unit by an independent draw
/// from it.
struct ThinParams {
  double alpha = 1.0;
  std::optional<Pmf> compounder;
};

/// T_α(P)(z) = Σ_{x≥z} P(x) C(x,z) α^z (1-α)^{x-z}. The tail of P is carried
/// over unchanged; α = 0 and α = 1 return the closed forms.
Pmf thin(const Pmf& p, double alpha);

/// Law of the sum of n i.i.d. copies of (1-α)δ₀ + αQ.
Pmf compound_binomial(std::size_t n, double alpha, const Pmf& q);

/// T_{α,Q}(P)(k) = Σ_ℓ P(ℓ) CBin(ℓ, α, Q)(k). Q must put no mass at 0.
Pmf compound_thin(const Pmf& p, double alpha, const Pmf& q);

Pmf apply(const Pmf& p, const ThinParams& params);

/// CPo(λ, Q): Po(λ)-mixture of Q^{*k}, stopped once the remaining Poisson
/// weight is ≤ eps_tail and at least min_size points are covered (or the
/// weights underflow).
Pmf compound_poisson(double lambda, const Pmf& q, double eps_tail = kDefaultEpsTail,
                     std::size_t min_size = 0);

}  // namespace thinlaw
