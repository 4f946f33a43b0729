#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace thinlaw {

/// Sum-plus-tail tolerance enforced on every Pmf.
inline constexpr double kMassTolerance = 1e-12;
/// Trailing masses below this are folded into the tail.
inline constexpr double kTrimThreshold = 1e-300;
/// Default truncation target for infinite-support families.
inline constexpr double kDefaultEpsTail = 1e-14;
/// Largest support (number of stored points) any operation may produce.
inline constexpr std::size_t kMaxSupport = 100000;

/// Probability mass function on {0, 1, ..., N} plus a nonnegative tail mass
/// standing for everything beyond N. Immutable once built; the stored
/// representation is canonical (no trailing masses below kTrimThreshold).
class Pmf {
 public:
  /// Validates and canonicalizes. Throws ParameterError on negative or
  /// non-finite entries or when |sum + tail - 1| > kMassTolerance.
  explicit Pmf(std::vector<double> probs, double tail = 0.0);

  static Pmf point_mass(std::size_t k);

  std::span<const double> probs() const { return probs_; }
  /// Mass at x; zero beyond the stored support.
  double operator[](std::size_t x) const {
    return x < probs_.size() ? probs_[x] : 0.0;
  }
  /// Number of stored points (N + 1).
  std::size_t size() const { return probs_.size(); }
  std::size_t max_index() const { return probs_.size() - 1; }
  double tail() const { return tail_; }
  /// Compensated sum of the stored masses.
  double stored_mass() const;

 private:
  struct Unchecked {};
  Pmf(Unchecked, std::vector<double> probs, double tail);
  friend Pmf make_pmf_unchecked(std::vector<double> probs, double tail);

  std::vector<double> probs_;
  double tail_ = 0.0;
};

/// Builds a Pmf from algorithm output: canonicalizes (trimming into the tail,
/// clamping -0 and subnormal noise) but skips the mass-sum check. Internal
/// algorithms whose outputs are probability vectors by construction use this.
Pmf make_pmf_unchecked(std::vector<double> probs, double tail);

/// A computed functional together with an estimate of how much the
/// truncated tail could move it.
struct Estimate {
  double value = 0.0;
  double tail_error = 0.0;
};

namespace family {
struct PointMass {
  std::size_t k = 0;
};
struct Bernoulli {
  double p = 0.0;
};
struct Binomial {
  std::size_t n = 0;
  double p = 0.0;
};
/// Geometric on {0, 1, ...} parameterized by its mean.
struct Geometric {
  double mean = 1.0;
};
/// Sum of r geometrics (r real, r ≥ 1) with total mean `mean`.
struct NegativeBinomial {
  double r = 1.0;
  double mean = 1.0;
};
struct Poisson {
  double lambda = 1.0;
};
/// Po(lambda) number of i.i.d. draws from a compounder on {1, 2, ...}.
struct CompoundPoisson {
  double lambda = 1.0;
  Pmf compounder = Pmf::point_mass(1);
};
struct Empirical {
  Pmf pmf = Pmf::point_mass(0);
};
}  // namespace family

using FamilySpec =
    std::variant<family::PointMass, family::Bernoulli, family::Binomial,
                 family::Geometric, family::NegativeBinomial, family::Poisson,
                 family::CompoundPoisson, family::Empirical>;

/// Throws ParameterError when a parameter lies outside its range.
void validate(const FamilySpec& spec);
std::string describe(const FamilySpec& spec);

/// Masses of `spec`, truncated at the smallest N whose tail is ≤ eps_tail
/// (eps_tail ∈ (0, 1e-3]). When min_size is larger than that, the support is
/// extended to min_size points (values that underflow are trimmed).
Pmf materialize(const FamilySpec& spec, double eps_tail = kDefaultEpsTail,
                std::size_t min_size = 0);

/// Exact Cauchy product. Tails combine as t_P + t_Q - t_P t_Q.
Pmf convolve(const Pmf& p, const Pmf& q);

/// n-fold self-convolution by binary splitting; n = 0 gives δ₀.
Pmf n_fold(const Pmf& p, std::size_t n);

/// Σ_x P(x) x(x-1)...(x-k+1). tail_error is the tail mass times the falling
/// factorial at the first truncated point (a first-order estimate).
Estimate factorial_moment(const Pmf& p, std::size_t k);

/// Factorial moments E[X^{k}] for k = 0..kmax in one pass over the support.
std::vector<double> factorial_moments(const Pmf& p, std::size_t kmax);

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;
};
SummaryStats summary_stats(const Pmf& p);

/// Shannon entropy in nats, 0 log 0 = 0.
Estimate entropy(const Pmf& p);

}  // namespace thinlaw
