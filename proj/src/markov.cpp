#include "thinlaw/markov.hpp"

#include <cmath>

#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/parallel.hpp"
#include "thinlaw/thinning.hpp"

namespace thinlaw {

double alpha_from_time(double t) {
  if (!(t >= 0.0)) throw ParameterError("chain time must be nonnegative");
  return std::exp(-t);
}

Pmf u_operator(const Pmf& p, double alpha, double lambda, double eps_tail) {
  if (!(lambda > 0.0 && std::isfinite(lambda))) throw ParameterError("lambda must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0,1]");
  if (alpha == 1.0) return p;
  const auto noise = materialize(family::Poisson{(1.0 - alpha) * lambda}, eps_tail);
  return convolve(thin(p, alpha), noise);
}

Pmf transition_row(std::size_t i, double t, double lambda, double eps_tail) {
  return u_operator(Pmf::point_mass(i), alpha_from_time(t), lambda, eps_tail);
}

std::vector<ChainPoint> chain_trajectory(const Pmf& p0, double lambda,
                                         std::span<const double> t_grid,
                                         double eps_tail) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0)) throw ParameterError("t grid must be nonnegative");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) {
      throw ParameterError("t grid must be nondecreasing");
    }
  }
  return parallel_map<ChainPoint>(t_grid.size(), [&](std::size_t i) {
    ChainPoint pt;
    pt.t = t_grid[i];
    pt.alpha = alpha_from_time(pt.t);
    pt.dist = u_operator(p0, pt.alpha, lambda, eps_tail);
    pt.tv_to_po = tv_poisson(pt.dist, lambda).value;
    pt.kl_to_po = kl_poisson(pt.dist, lambda).value;
    pt.chi2_to_po = chi2_poisson(pt.dist, lambda).value;
    return pt;
  });
}

}  // namespace thinlaw
