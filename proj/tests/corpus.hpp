#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "thinlaw/classes.hpp"
#include "thinlaw/pmf.hpp"

namespace corpus {

struct Entry {
  std::string name;
  thinlaw::FamilySpec spec;
  thinlaw::Pmf pmf;
  bool bernoulli_sum = false;
  bool ulc = false;
  bool poisson = false;
};

inline Entry make(std::string name, thinlaw::FamilySpec spec, bool bsum, bool ulc,
                  bool poisson = false) {
  auto pmf = thinlaw::materialize(spec, 1e-15);
  return {std::move(name), std::move(spec), std::move(pmf), bsum, ulc, poisson};
}

inline thinlaw::Pmf from(std::vector<double> probs) { return thinlaw::Pmf(std::move(probs)); }

/// Fixed test distributions with their known class memberships.
inline const std::vector<Entry>& all() {
  using namespace thinlaw::family;
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back(make("bern(0.3)", Bernoulli{0.3}, true, true));
    e.push_back(make("bern(0.8)", Bernoulli{0.8}, true, true));
    e.push_back(make("bin(2,0.5)", Binomial{2, 0.5}, true, true));
    e.push_back(make("bin(3,1/3)", Binomial{3, 1.0 / 3.0}, true, true));
    e.push_back(make("bin(4,0.25)", Binomial{4, 0.25}, true, true));
    e.push_back(make("bin(5,0.4)", Binomial{5, 0.4}, true, true));
    e.push_back(make("bin(12,0.7)", Binomial{12, 0.7}, true, true));
    e.push_back(make("point(2)", PointMass{2}, true, true));
    e.push_back(make("po(1)", Poisson{1.0}, false, true, true));
    e.push_back(make("po(2.5)", Poisson{2.5}, false, true, true));
    e.push_back(make("po(0.4)", Poisson{0.4}, false, true, true));
    e.push_back(make("geo(1)", Geometric{1.0}, false, false));
    e.push_back(make("geo(0.5)", Geometric{0.5}, false, false));
    e.push_back(make("negbin(2,1.5)", NegativeBinomial{2.0, 1.5}, false, false));
    e.push_back(make("uniform{0..3}", Empirical{from({0.25, 0.25, 0.25, 0.25})}, false, false));
    e.push_back(make("bernsum(0.2,0.5,0.9)",
                     Empirical{thinlaw::bernoulli_sum(std::vector<double>{0.2, 0.5, 0.9})},
                     true, true));
    e.push_back(make("bimodal", Empirical{from({0.4, 0.1, 0.1, 0.4})}, false, false));
    return e;
  }();
  return entries;
}

/// Poisson with support long enough that polynomial moments up to degree ~24
/// see no truncation.
inline thinlaw::Pmf wide_poisson(double lambda) {
  return thinlaw::materialize(thinlaw::family::Poisson{lambda}, 1e-16,
                              static_cast<std::size_t>(12.0 * lambda) + 120);
}

/// Random Pmf on {0..n-1} with strictly positive masses.
inline thinlaw::Pmf random_pmf(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = u(rng));
  for (auto& x : v) x /= s;
  return thinlaw::Pmf(std::move(v));
}

/// Random Bernoulli sum, a convenient source of ULC (and hence PB) laws.
inline thinlaw::Pmf random_bernoulli_sum(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> ps(n);
  for (auto& p : ps) p = u(rng);
  return thinlaw::bernoulli_sum(ps);
}

inline double max_abs_diff(const thinlaw::Pmf& a, const thinlaw::Pmf& b) {
  double m = 0.0;
  const auto n = std::max(a.size(), b.size());
  for (std::size_t x = 0; x < n; ++x) m = std::max(m, std::abs(a[x] - b[x]));
  return m;
}

}  // namespace corpus
