#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "corpus.hpp"
#include "thinlaw/charlier.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/harness.hpp"
#include "thinlaw/numeric.hpp"
#include "thinlaw/thinning.hpp"

using namespace thinlaw;

namespace {

double component_sum(const BoundReport& b) {
  double s = 0.0;
  for (const auto& [k, v] : b.components) s += v;
  return s;
}

}  // namespace

TEST_SUITE("divergences") {

TEST_CASE("kl examples") {
  std::mt19937_64 rng(1);
  const auto p = corpus::random_pmf(rng, 6);
  CHECK(kl(p, p).value == doctest::Approx(0.0));
  const auto a = materialize(family::Poisson{0.9}, 1e-16);
  const auto b = materialize(family::Poisson{1.0}, 1e-16);
  CHECK(std::abs(kl(a, b).value - 0.005175535907956329) <= 1e-10);
  CHECK(std::abs(kl_poisson(a, 1.0).value - 0.005175535907956329) <= 1e-10);
  const auto bin = materialize(family::Binomial{2, 0.3});
  const double d = kl_poisson(bin, 0.6).value;
  CHECK(std::abs(d - 0.03827183223537959) <= 1e-12);
  CHECK(d <= 0.09 / 1.4);
  CHECK(std::isinf(kl(materialize(family::Binomial{3, 0.5}), Pmf({0.5, 0.5})).value));
}

TEST_CASE("tv examples") {
  std::mt19937_64 rng(2);
  const auto p = corpus::random_pmf(rng, 6);
  CHECK(tv(p, p).value == 0.0);
  const double pr = 0.2;
  CHECK(std::abs(tv_poisson(materialize(family::Bernoulli{pr}), pr).value -
                 pr * (1.0 - std::exp(-pr))) <= 1e-14);
  const double t = tv(materialize(family::Poisson{1.0}, 1e-16),
                      materialize(family::Poisson{1.5}, 1e-16)).value;
  CHECK(std::abs(t - 0.17793348197181007) <= 1e-12);
  const auto pb = poisson_tv_bound(1.0, 1.5);
  CHECK(pb.value == doctest::Approx(2.0 * (1.0 - std::exp(-0.5))));
  CHECK(t <= pb.value);
  CHECK(t <= poisson_tv_bound_half_sum(1.0, 1.5));
}

TEST_CASE("chi2 examples") {
  std::mt19937_64 rng(3);
  const auto p = corpus::random_pmf(rng, 6);
  CHECK(chi2(p, p).value == doctest::Approx(0.0));
  const double want = std::exp(2.0) / 2.0 - 1.0;
  CHECK(std::abs(chi2(Pmf::point_mass(2), materialize(family::Poisson{2.0}, 1e-16)).value - want) <= 1e-12);
  CHECK(std::abs(chi2_poisson(Pmf::point_mass(2), 2.0).value - want) <= 1e-12);
  const auto b = materialize(family::Binomial{2, 0.5});
  const double direct = chi2_poisson(b, 1.0).value;
  CHECK(std::abs(direct - 0.18924829995083229) <= 1e-12);
  const auto coeffs = charlier_moments(b, 1.0, 40);
  CHECK(std::abs(chi2_series(coeffs, 1.0) - direct) <= 1e-8);
}

TEST_CASE("divergence inequalities on random pairs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = corpus::random_pmf(rng, 2 + trial % 9);
    const auto q = corpus::random_pmf(rng, 2 + trial % 9);
    const double d = kl(p, q).value, t = tv(p, q).value, c = chi2(p, q).value;
    CHECK(d >= 0.0);
    CHECK(t >= 0.0);
    CHECK(c >= 0.0);
    CHECK(t * t <= d / 2.0 + 1e-15);
    CHECK(d <= std::log1p(c) + 1e-15);
    CHECK(std::log1p(c) <= c);
  }
}

TEST_CASE("bound report components sum to the value") {
  const auto g = materialize(family::Geometric{2.0}, 1e-15);
  for (const auto& b : {bound_llogl(g, 0.5, 1.0), bound_variance(g, 0.5, 1.0), bound_tv(g, 7),
                        bound_yannaros(5, 0.2, 0.7), poisson_tv_bound(0.3, 1.1)}) {
    REQUIRE(b.applicable);
    CHECK(std::abs(b.value - component_sum(b)) <= 1e-12 * std::max(1.0, b.value));
  }
}

TEST_CASE("bound_llogl examples") {
  const auto pm = bound_llogl(Pmf::point_mass(4), 0.25, 1.0);
  CHECK(pm.value == doctest::Approx(0.0625 / 1.5));
  CHECK(pm.components.at("llogl_term") == doctest::Approx(0.0).scale(1.0));
  const auto po = materialize(family::Poisson{2.0}, 1e-15);
  const auto b = bound_llogl(po, 0.5, 1.0);
  // Oracle: E[αX log(αX/λ)] by direct summation.
  double e = 0.0;
  for (std::size_t x = 1; x < 60; ++x) e += poisson_pmf(2.0, x) * 0.5 * x * std::log(0.5 * x);
  CHECK(b.value == doctest::Approx(0.25 + e).epsilon(1e-12));
  CHECK(kl_poisson(thin(po, 0.5), 1.0).value <= b.value);
  const auto g = materialize(family::Geometric{2.0}, 1e-15);
  const auto bg = bound_llogl(g, 0.5, 1.0);
  CHECK(std::isfinite(bg.value));
  CHECK(kl_poisson(thin(g, 0.5), 1.0).value <= bg.value);
  const auto bad = bound_llogl(g, 0.5, 2.0);
  CHECK_FALSE(bad.applicable);
  CHECK(!bad.reason.empty());
  CHECK_THROWS_AS(bound_llogl(g, 1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(bound_llogl(g, 0.5, 0.0), ParameterError);
}

TEST_CASE("bound_variance examples") {
  CHECK(bound_variance(Pmf::point_mass(3), 0.5, 1.5).value == doctest::Approx(0.25));
  const auto g = materialize(family::Geometric{2.0}, 1e-15);
  CHECK(bound_variance(g, 0.5, 1.0).value == doctest::Approx(1.75).epsilon(1e-10));
  for (std::size_t n = 2; n <= 64; ++n) {
    const double nd = static_cast<double>(n);
    const auto b = bound_variance(nd, 2.0 * nd, 1.0 / nd, 1.0);
    CHECK(b.value <= 2.0 / nd + 1.0 / (nd * nd));
  }
}

TEST_CASE("bound_tv examples") {
  const auto g = materialize(family::Geometric{1.0}, 1e-15);
  const auto b = bound_tv(g, 100);
  CHECK(b.value == doctest::Approx(1.0 / (100.0 * std::sqrt(2.0)) + std::sqrt(2.0) / 20.0).epsilon(1e-9));
  CHECK(tv_poisson(thinned_sum(g, 100), 1.0).value <= b.value);
  CHECK(bound_tv(Pmf::point_mass(2), 9).value == doctest::Approx(1.0 / (9.0 * std::sqrt(2.0))));
  CHECK(bound_yannaros(4, 0.25, 1.0).value == doctest::Approx(0.25 / std::sqrt(2.0)));
  CHECK_THROWS_AS(bound_tv(g, 1), ParameterError);
}

TEST_CASE("bound dominance sweep") {
  int triples = 0;
  for (const auto& e : corpus::all()) {
    const double mean = summary_stats(e.pmf).mean;
    for (double a : {0.1, 0.3, 0.6, 0.9}) {
      const double lam = a * mean;
      const double d = kl_poisson(thin(e.pmf, a), lam).value;
      const auto bl = bound_llogl(e.pmf, a, lam);
      const auto bv = bound_variance(e.pmf, a, lam);
      REQUIRE(bl.applicable);
      REQUIRE(bv.applicable);
      CHECK(d <= bl.value + 1e-14);
      CHECK(d <= bv.value + 1e-14);
      ++triples;
    }
  }
  CHECK(triples >= 20);
  for (const auto& e : corpus::all()) {
    const double mean = summary_stats(e.pmf).mean;
    for (std::size_t n = 2; n <= 128; n += (n < 16 ? 1 : 16)) {
      const auto t = tv_poisson(thinned_sum(e.pmf, n), mean).value;
      CHECK(t <= bound_tv(e.pmf, n).value);
    }
  }
}

TEST_CASE("poisson tv bound on a grid") {
  for (double l = 0.1; l <= 6.0; l += 0.7) {
    for (double m = 0.1; m <= 6.0; m += 0.55) {
      const auto pl = materialize(family::Poisson{l}, 1e-16);
      const double t = tv_poisson(pl, m).value;
      CHECK(t <= poisson_tv_bound(l, m).value + 1e-15);
      CHECK(t <= poisson_tv_bound_half_sum(l, m) + 1e-15);
    }
  }
}

TEST_CASE("log-space poisson reference stays finite far in the tail") {
  const auto p = Pmf::point_mass(400);
  const auto d = kl_poisson(p, 1.0);
  CHECK(std::isfinite(d.value));
  CHECK(d.value == doctest::Approx(-log_poisson_pmf(1.0, 400)).epsilon(1e-12));
}

}  // TEST_SUITE
