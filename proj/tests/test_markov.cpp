#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "thinlaw/charlier.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/markov.hpp"
#include "thinlaw/thinning.hpp"

using namespace thinlaw;
using corpus::max_abs_diff;

TEST_SUITE("markov") {

TEST_CASE("u_operator examples") {
  std::mt19937_64 rng(1);
  const auto p = corpus::random_pmf(rng, 6);
  CHECK(max_abs_diff(u_operator(p, 1.0, 2.0), p) == 0.0);
  const auto po = materialize(family::Poisson{1.7}, 1e-16);
  for (double a : {0.0, 0.2, 0.5, 0.95}) {
    CHECK(max_abs_diff(u_operator(po, a, 1.7), po) <= 1e-12);
  }
  CHECK_THROWS_AS(u_operator(p, 1.2, 1.0), ParameterError);
  CHECK_THROWS_AS(u_operator(p, 0.5, 0.0), ParameterError);
}

TEST_CASE("semigroup composition law") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = corpus::random_pmf(rng, 2 + trial % 8);
    const double a = u(rng), b = u(rng);
    const double lam = 0.3 + 3.0 * u(rng);
    CHECK(max_abs_diff(u_operator(u_operator(p, b, lam), a, lam), u_operator(p, a * b, lam)) <= 1e-12);
  }
}

TEST_CASE("mean interpolation") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = corpus::random_pmf(rng, 2 + trial % 10);
    const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double lam = 0.5 + trial * 0.1;
    const double want = a * summary_stats(p).mean + (1 - a) * lam;
    CHECK(std::abs(summary_stats(u_operator(p, a, lam)).mean - want) <= 1e-10);
  }
}

TEST_CASE("transition rows") {
  CHECK(max_abs_diff(transition_row(4, 0.0, 1.3), Pmf::point_mass(4)) == 0.0);
  const double t = 0.8;
  const double lam0 = (1 - std::exp(-t)) * 2.0;
  CHECK(max_abs_diff(transition_row(0, t, 2.0), materialize(family::Poisson{lam0}, kChainEpsTail)) <= 1e-15);
  CHECK(tv_poisson(transition_row(3, 10.0, 1.0), 1.0).value <= 1e-4);
  // Row i is Bin(i, e^{-t}) * Po((1 - e^{-t})λ).
  const auto row = transition_row(5, 0.4, 1.1);
  const auto want = convolve(materialize(family::Binomial{5, std::exp(-0.4)}),
                             materialize(family::Poisson{(1 - std::exp(-0.4)) * 1.1}, 1e-16));
  CHECK(max_abs_diff(row, want) <= 1e-14);
}

TEST_CASE("alpha and time conversion") {
  for (double t : {0.0, 0.1, 1.0, 7.0}) CHECK(std::abs(alpha_from_time(t) - std::exp(-t)) <= 1e-12);
  CHECK_THROWS_AS(alpha_from_time(-1.0), ParameterError);
}

TEST_CASE("chain trajectory examples") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.35 * i);
  const auto po = chain_trajectory(materialize(family::Poisson{2.0}, 1e-16), 2.0, grid);
  for (const auto& pt : po) {
    CHECK(pt.tv_to_po <= 1e-12);
    CHECK(std::abs(pt.kl_to_po) <= 1e-12);
    CHECK(pt.chi2_to_po <= 1e-12);
  }

  std::vector<double> log_grid;
  for (int i = 0; i <= 7; ++i) log_grid.push_back(std::pow(10.0, -1.0 + i * 0.25));
  const auto d2 = chain_trajectory(Pmf::point_mass(2), 2.0, log_grid);
  const auto& last = d2.back();
  CHECK(last.chi2_to_po / std::exp(-4 * last.t) == doctest::Approx(0.5).epsilon(1e-3));

  const auto b = materialize(family::Binomial{4, 0.25});
  const auto traj = chain_trajectory(b, 1.0, grid);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& pt = traj[i];
    CHECK(std::abs(pt.alpha - std::exp(-pt.t)) <= 1e-12);
    const double bound = 2.0 - thin(b, pt.alpha)[0] - std::exp(-pt.alpha * 1.0);
    CHECK(pt.tv_to_po <= bound + 1e-15);
    CHECK(std::abs(summary_stats(pt.dist).mean - (pt.alpha * 1.0 + (1 - pt.alpha) * 1.0)) <= 1e-9);
    if (i > 0) CHECK(pt.tv_to_po <= traj[i - 1].tv_to_po + 1e-15);
  }
  CHECK_THROWS_AS(chain_trajectory(b, 1.0, std::vector<double>{1.0, 0.5}), ParameterError);
}

TEST_CASE("tv is nonincreasing along trajectories on the corpus") {
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.2 * i);
  for (const auto& e : corpus::all()) {
    const double lam = std::max(0.5, summary_stats(e.pmf).mean);
    const auto traj = chain_trajectory(e.pmf, lam, grid);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      CHECK(traj[i].tv_to_po <= traj[i - 1].tv_to_po + 1e-14);
    }
  }
}

TEST_CASE("chain chi2 matches the charlier series for PB inputs") {
  std::vector<double> grid{0.0, 0.05, 0.3, 1.0, 2.5};
  for (const auto& e : corpus::all()) {
    if (e.pmf.tail() != 0.0) continue;
    const double lam = summary_stats(e.pmf).mean;
    const auto c = lr_coefficients(e.pmf, lam, 150);
    for (const auto& pt : chain_trajectory(e.pmf, lam, grid)) {
      CHECK(std::abs(pt.chi2_to_po - chi2_series(c, pt.alpha)) <= 1e-8);
    }
  }
}

TEST_CASE("only the poisson law is invariant") {
  const std::vector<double> alphas{0.3, 0.5, 0.9};
  for (const auto& e : corpus::all()) {
    if (e.poisson) continue;
    const double lam = summary_stats(e.pmf).mean;
    for (double a : alphas) CHECK(tv(u_operator(e.pmf, a, lam), e.pmf).value > 1e-9);
  }
}

TEST_CASE("charlier contraction under the semigroup") {
  for (const auto& e : corpus::all()) {
    const double lam = summary_stats(e.pmf).mean;
    for (double a : {0.25, 0.75}) {
      const auto u = u_operator(e.pmf, a, lam);
      for (std::size_t k = 1; k <= 6; ++k) {
        const double want = std::pow(a, static_cast<double>(k)) * charlier_moment(e.pmf, lam, k);
        CHECK(std::abs(charlier_moment(u, lam, k) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

}  // TEST_SUITE
