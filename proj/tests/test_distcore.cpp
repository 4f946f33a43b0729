#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"
#include "thinlaw/pmf.hpp"

using namespace thinlaw;
using corpus::max_abs_diff;

TEST_SUITE("distcore") {

TEST_CASE("pmf invariants are enforced") {
  CHECK_THROWS_AS(Pmf({0.5, -0.1, 0.6}), ParameterError);
  CHECK_THROWS_AS(Pmf({0.5, 0.4}), ParameterError);
  CHECK_THROWS_AS(Pmf({0.5, 0.5}, -1e-3), ParameterError);
  CHECK_NOTHROW(Pmf({0.5, 0.5 - 5e-13}));
  const Pmf p({0.5, 0.5, 1e-305, 0.0});
  CHECK(p.size() == 2);
  CHECK(p.tail() == doctest::Approx(1e-305));
  CHECK(p[7] == 0.0);
}

TEST_CASE("materialize examples") {
  const auto pm = materialize(family::PointMass{0});
  CHECK(pm.size() == 1);
  CHECK(pm[0] == 1.0);
  CHECK(pm.tail() == 0.0);

  const auto geo = materialize(family::Geometric{1.0});
  for (std::size_t x = 0; x < geo.size(); ++x) {
    CHECK(geo[x] == doctest::Approx(std::pow(0.5, static_cast<double>(x) + 1)).epsilon(1e-13));
  }
  CHECK(geo.tail() <= kDefaultEpsTail);

  const auto po = materialize(family::Poisson{1.0});
  CHECK(po[0] == doctest::Approx(0.3678794411714423).epsilon(1e-12));
  CHECK(po.tail() <= kDefaultEpsTail);
}

TEST_CASE("materialize respects eps_tail and rejects bad parameters") {
  for (double eps : {1e-3, 1e-8, 1e-14}) {
    for (double lam : {0.3, 5.0, 50.0}) {
      const auto p = materialize(family::Poisson{lam}, eps);
      CHECK(p.tail() <= eps);
      // True remaining mass, from the complement of a long direct sum.
      double beyond = 0.0;
      for (std::size_t x = p.size(); x < p.size() + 400; ++x) beyond += poisson_pmf(lam, x);
      CHECK(beyond <= eps);
    }
  }
  CHECK_THROWS_AS(materialize(family::Poisson{-1.0}), ParameterError);
  CHECK_THROWS_AS(materialize(family::Bernoulli{1.2}), ParameterError);
  CHECK_THROWS_AS(materialize(family::Geometric{0.0}), ParameterError);
  CHECK_THROWS_AS(materialize(family::NegativeBinomial{0.5, 1.0}), ParameterError);
  CHECK_THROWS_AS(materialize(family::Poisson{1.0}, 0.0), ParameterError);
  CHECK_THROWS_AS(materialize(family::Poisson{1.0}, 1e-2), ParameterError);
  CHECK_THROWS_AS(materialize(family::CompoundPoisson{1.0, Pmf({0.5, 0.5})}), ParameterError);
}

TEST_CASE("binomial and negative binomial masses match direct formulas") {
  const auto b = materialize(family::Binomial{30, 0.37});
  for (std::size_t x = 0; x <= 30; ++x) {
    const double want = binomial_coefficient(30, x) * std::pow(0.37, static_cast<double>(x)) *
                        std::pow(0.63, static_cast<double>(30 - x));
    CHECK(b[x] == doctest::Approx(want).epsilon(1e-12));
  }
  // NegBin(r, mean): P(y) = Γ(y+r)/(Γ(r) y!) (1-q)^r q^y with q = mean/(r+mean).
  const double r = 2.5, mean = 1.5, q = mean / (r + mean);
  const auto nb = materialize(family::NegativeBinomial{r, mean});
  for (std::size_t y = 0; y < 20; ++y) {
    const double yd = static_cast<double>(y);
    const double want = std::exp(std::lgamma(yd + r) - std::lgamma(r) - std::lgamma(yd + 1) +
                                 r * std::log1p(-q) + yd * std::log(q));
    CHECK(nb[y] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(summary_stats(nb).mean == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("poisson mean recovered for lambda up to 20") {
  for (double lam = 0.25; lam <= 20.0; lam += 0.75) {
    CHECK(std::abs(summary_stats(materialize(family::Poisson{lam})).mean - lam) <= 1e-9);
  }
}

TEST_CASE("convolve examples") {
  std::mt19937_64 rng(7);
  const auto p = corpus::random_pmf(rng, 6);
  CHECK(max_abs_diff(convolve(Pmf::point_mass(0), p), p) == 0.0);
  const auto b = materialize(family::Bernoulli{0.3});
  CHECK(max_abs_diff(convolve(b, b), materialize(family::Binomial{2, 0.3})) <= 1e-15);
  const auto p1 = materialize(family::Poisson{1.0});
  const auto p2 = materialize(family::Poisson{2.0});
  const auto s = convolve(p1, p2);
  const auto po3 = materialize(family::Poisson{3.0});
  // Brute-force Cauchy product oracle.
  REQUIRE(s.size() == p1.size() + p2.size() - 1);
  for (std::size_t x = 0; x < s.size(); ++x) {
    double direct = 0.0;
    for (std::size_t k = 0; k <= x; ++k) direct += p1[k] * p2[x - k];
    CHECK(std::abs(s[x] - direct) <= 1e-14 * direct + 1e-300);
  }
  CHECK(max_abs_diff(s, po3) <= 1e-12);
  CHECK(s.tail() <= 2 * kDefaultEpsTail + kDefaultEpsTail * kDefaultEpsTail);
}

TEST_CASE("convolve is commutative and associative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = corpus::random_pmf(rng, 2 + trial % 7);
    const auto b = corpus::random_pmf(rng, 3 + trial % 5);
    const auto c = corpus::random_pmf(rng, 1 + trial % 4);
    CHECK(max_abs_diff(convolve(a, b), convolve(b, a)) <= 1e-13);
    CHECK(max_abs_diff(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) <= 1e-13);
  }
}

TEST_CASE("n_fold matches sequential folding") {
  const auto bern = materialize(family::Bernoulli{0.35});
  CHECK(max_abs_diff(n_fold(bern, 9), materialize(family::Binomial{9, 0.35})) <= 1e-14);
  std::mt19937_64 rng(5);
  const auto p = corpus::random_pmf(rng, 5);
  CHECK(max_abs_diff(n_fold(p, 1), p) == 0.0);
  CHECK(max_abs_diff(n_fold(p, 0), Pmf::point_mass(0)) == 0.0);
  Pmf seq = Pmf::point_mass(0);
  for (std::size_t n = 1; n <= 13; ++n) {
    seq = convolve(seq, p);
    CHECK(max_abs_diff(n_fold(p, n), seq) <= 1e-13);
  }
  const auto g2 = n_fold(materialize(family::Geometric{1.0}), 2);
  CHECK(g2[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(g2[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("factorial moments") {
  for (double lam : {0.5, 2.0, 7.5}) {
    const auto po = corpus::wide_poisson(lam);
    for (std::size_t k = 0; k <= 8; ++k) {
      CHECK(factorial_moment(po, k).value ==
            doctest::Approx(std::pow(lam, static_cast<double>(k))).epsilon(1e-10));
    }
  }
  std::mt19937_64 rng(3);
  CHECK(factorial_moment(corpus::random_pmf(rng, 9), 0).value == doctest::Approx(1.0));
  const auto b = materialize(family::Bernoulli{0.3});
  CHECK(factorial_moment(b, 1).value == doctest::Approx(0.3));
  for (std::size_t k = 2; k < 6; ++k) CHECK(factorial_moment(b, k).value == 0.0);
  const auto fm = factorial_moments(materialize(family::Binomial{7, 0.2}), 10);
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(fm[k] == doctest::Approx(factorial_moment(materialize(family::Binomial{7, 0.2}), k).value));
  }
}

TEST_CASE("falling-factorial Vandermonde identity under convolution") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = corpus::random_pmf(rng, 2 + trial % 6);
    const auto q = corpus::random_pmf(rng, 2 + (trial * 3) % 5);
    const auto pq = convolve(p, q);
    for (std::size_t k = 0; k <= 6; ++k) {
      double rhs = 0.0;
      for (std::size_t l = 0; l <= k; ++l) {
        rhs += binomial_coefficient(k, l) * factorial_moment(p, l).value *
               factorial_moment(q, k - l).value;
      }
      const double lhs = factorial_moment(pq, k).value;
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("summary stats") {
  const auto b = summary_stats(materialize(family::Binomial{2, 0.5}));
  CHECK(b.mean == doctest::Approx(1.0));
  CHECK(b.variance == doctest::Approx(0.5));
  const auto pm = summary_stats(Pmf::point_mass(6));
  CHECK(pm.mean == 6.0);
  CHECK(pm.variance == doctest::Approx(0.0));
  const auto g = summary_stats(materialize(family::Geometric{1.0}));
  CHECK(g.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.variance == doctest::Approx(2.0).epsilon(1e-10));
  // mean = E[X], variance = E[X(X-1)] + mean - mean².
  const auto nb = materialize(family::NegativeBinomial{3.0, 2.0});
  const double f1 = factorial_moment(nb, 1).value, f2 = factorial_moment(nb, 2).value;
  CHECK(summary_stats(nb).variance == doctest::Approx(f2 + f1 - f1 * f1).epsilon(1e-12));
}

TEST_CASE("entropy") {
  CHECK(entropy(Pmf::point_mass(5)).value == 0.0);
  CHECK(entropy(materialize(family::Bernoulli{0.5})).value == doctest::Approx(std::log(2.0)));
  // 40-digit reference for H(Po(1)).
  CHECK(std::abs(entropy(materialize(family::Poisson{1.0}, 1e-15)).value -
                 1.3048422422562514843) <= 1e-10);
}

TEST_CASE("convolution output larger than the support cap is a resource error") {
  std::vector<double> wide(60000, 1.0 / 60000.0);
  const Pmf p(wide);
  CHECK_THROWS_AS(convolve(p, p), ResourceError);
}

}  // TEST_SUITE
