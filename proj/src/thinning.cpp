#include "thinlaw/thinning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"

namespace thinlaw {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0,1]");
}

void check_compounder(const Pmf& q) {
  if (q[0] != 0.0) {
    throw ParameterError("compounding distribution must put no mass at 0");
  }
}

// Fills kernel[0..x] with C(x,z) α^z (1-α)^{x-z} for 0 < α < 1.
void binomial_kernel(std::size_t x, double alpha, std::vector<double>& kernel) {
  const double log_keep = std::log(alpha);
  const double log_drop = std::log1p(-alpha);
  const double odds = alpha / (1.0 - alpha);
  const double xd = static_cast<double>(x);
  if (-xd * log_drop < 700.0) {
    double b = std::exp(xd * log_drop);
    kernel[0] = b;
    for (std::size_t z = 0; z < x; ++z) {
      b *= static_cast<double>(x - z) / static_cast<double>(z + 1) * odds;
      kernel[z + 1] = b;
    }
    return;
  }
  // (1-α)^x underflows: seed at the mode in log space, then recur outward.
  const auto mode = std::min<std::size_t>(
      x, static_cast<std::size_t>(std::floor((xd + 1.0) * alpha)));
  const double md = static_cast<double>(mode);
  double b = std::exp(log_binomial_coefficient(x, mode) + md * log_keep +
                      (xd - md) * log_drop);
  kernel[mode] = b;
  for (std::size_t z = mode; z < x; ++z) {
    b *= static_cast<double>(x - z) / static_cast<double>(z + 1) * odds;
    kernel[z + 1] = b;
  }
  b = kernel[mode];
  for (std::size_t z = mode; z > 0; --z) {
    b *= static_cast<double>(z) / (static_cast<double>(x - z + 1) * odds);
    kernel[z - 1] = b;
  }
}

Pmf unit_compounding_step(double alpha, const Pmf& q) {
  std::vector<double> r(q.probs().begin(), q.probs().end());
  for (double& v : r) v *= alpha;
  r[0] = 1.0 - alpha;
  return make_pmf_unchecked(std::move(r), alpha * q.tail());
}

}  // namespace

Pmf thin(const Pmf& p, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) return p;
  if (alpha == 0.0) return Pmf::point_mass(0);
  const auto probs = p.probs();
  const std::size_t n = probs.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> kernel(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    const double px = probs[x];
    if (px == 0.0) continue;
    binomial_kernel(x, alpha, kernel);
    for (std::size_t z = 0; z <= x; ++z) out[z] += px * kernel[z];
  }
  return make_pmf_unchecked(std::move(out), p.tail());
}

Pmf compound_binomial(std::size_t n, double alpha, const Pmf& q) {
  check_alpha(alpha);
  check_compounder(q);
  return n_fold(unit_compounding_step(alpha, q), n);
}

Pmf compound_thin(const Pmf& p, double alpha, const Pmf& q) {
  check_alpha(alpha);
  check_compounder(q);
  if (alpha == 0.0) return Pmf::point_mass(0);
  const Pmf step = unit_compounding_step(alpha, q);
  const auto probs = p.probs();
  std::vector<double> out(1, 0.0);
  CompensatedSum tail;
  tail += p.tail();
  // partial = CBin(ℓ, α, Q), advanced by one convolution per source point.
  Pmf partial = Pmf::point_mass(0);
  for (std::size_t l = 0; l < probs.size(); ++l) {
    if (l > 0) partial = convolve(partial, step);
    const double pl = probs[l];
    if (pl == 0.0) continue;
    const auto b = partial.probs();
    if (b.size() > out.size()) out.resize(b.size(), 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += pl * b[k];
    tail += pl * partial.tail();
  }
  return make_pmf_unchecked(std::move(out), tail.value());
}

Pmf apply(const Pmf& p, const ThinParams& params) {
  if (params.compounder) return compound_thin(p, params.alpha, *params.compounder);
  return thin(p, params.alpha);
}

Pmf compound_poisson(double lambda, const Pmf& q, double eps_tail, std::size_t min_size) {
  if (!(lambda > 0.0 && std::isfinite(lambda))) {
    throw ParameterError("compound Poisson rate must be positive");
  }
  if (!(eps_tail > 0.0 && eps_tail <= 1e-3)) {
    throw ParameterError("eps_tail must lie in (0, 1e-3]");
  }
  check_compounder(q);
  std::vector<double> out(1, 0.0);
  CompensatedSum weight_total;
  CompensatedSum inner_tail;
  Pmf power = Pmf::point_mass(0);
  for (std::size_t k = 0;; ++k) {
    if (k > 0) power = convolve(power, q);
    const double w = poisson_pmf(lambda, k);
    weight_total += w;
    const auto b = power.probs();
    if (b.size() > out.size()) out.resize(b.size(), 0.0);
    for (std::size_t x = 0; x < b.size(); ++x) out[x] += w * b[x];
    inner_tail += w * power.tail();

    const double ratio = lambda / static_cast<double>(k + 2);
    const double bound = ratio < 1.0 ? poisson_pmf(lambda, k + 1) / (1.0 - ratio)
                                     : std::numeric_limits<double>::infinity();
    const bool weights_exhausted = ratio < 1.0 && poisson_pmf(lambda, k + 1) < kTrimThreshold;
    if (bound <= eps_tail && (out.size() >= min_size || weights_exhausted)) {
      const double poisson_rest = std::clamp(1.0 - weight_total.value(), 0.0, bound);
      return make_pmf_unchecked(std::move(out), poisson_rest + inner_tail.value());
    }
  }
}

}  // namespace thinlaw
