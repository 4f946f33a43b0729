#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Poisson factors inside the semigroup are truncated this far out so that
/// χ² values near 1e-13 are not swamped by the cut.
inline constexpr double kChainEpsTail = 1e-30;

/// α = e^{-t}; the only place chain time is converted.
double alpha_from_time(double t);

/// U_α^λ(P) = T_α(P) * Po((1-α)λ).
Pmf u_operator(const Pmf& p, double alpha, double lambda, double eps_tail = kChainEpsTail);

/// Row i of the chain kernel at time t: Bin(i, e^{-t}) * Po((1-e^{-t})λ).
Pmf transition_row(std::size_t i, double t, double lambda, double eps_tail = kChainEpsTail);

struct ChainPoint {
  double t = 0.0;
  double alpha = 1.0;
  Pmf dist = Pmf::point_mass(0);
  double tv_to_po = 0.0;
  double kl_to_po = 0.0;
  double chi2_to_po = 0.0;
};

/// Law of the chain started from P0 at each time of a nondecreasing grid,
/// with its distances to the invariant Po(λ).
std::vector<ChainPoint> chain_trajectory(const Pmf& p0, double lambda,
                                         std::span<const double> t_grid,
                                         double eps_tail = kChainEpsTail);

}  // namespace thinlaw
