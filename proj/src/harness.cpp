#include "thinlaw/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "thinlaw/charlier.hpp"
#include "thinlaw/classes.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/fisher.hpp"
#include "thinlaw/io.hpp"
#include "thinlaw/markov.hpp"
#include "thinlaw/numeric.hpp"
#include "thinlaw/parallel.hpp"
#include "thinlaw/thinning.hpp"

namespace thinlaw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t grid_count(double v) {
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw ParameterError("n grid entries must be integers >= 1, got " + format_number(v));
  }
  if (v > static_cast<double>(kMaxN)) {
    throw ResourceError("n = " + format_number(v) + " exceeds the cap of " +
                        std::to_string(kMaxN));
  }
  return static_cast<std::size_t>(v);
}

// Charlier moments weight the cut tail by polynomials of degree up to kmax, so
// truncated families get extra room past the eps cut.
Pmf materialize_for_charlier(const FamilySpec& spec, double eps_tail) {
  const auto base = materialize(spec, eps_tail);
  if (base.tail() == 0.0) return base;
  return materialize(spec, eps_tail, base.size() + 4 * kDefaultCharlierKmax);
}

std::vector<std::size_t> counts_of(const std::vector<double>& grid) {
  if (grid.empty()) throw ParameterError("n grid is empty");
  std::vector<std::size_t> out;
  out.reserve(grid.size());
  for (double v : grid) out.push_back(grid_count(v));
  return out;
}

// 1 - Σ_{x<k} P(x), accumulated from the masses above k so that small
// complements keep their digits.
double mass_from(const Pmf& p, std::size_t k) {
  CompensatedSum s;
  for (std::size_t x = k; x < p.size(); ++x) s += p[x];
  s += p.tail();
  return s.value();
}

double value_or_nan(const BoundReport& b) { return b.applicable ? b.value : kNaN; }

double positive_ratio(double num, double den) { return den > 0.0 ? num / den : kNaN; }

struct TailTracker {
  double kl = 0.0;
  double tv = 0.0;
  void add(const Estimate& k, const Estimate& t) {
    kl = std::max(kl, k.tail_error);
    tv = std::max(tv, t.tail_error);
  }
  nlohmann::json json() const { return {{"kl", kl}, {"tv", tv}}; }
};

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::LtnIid: return "ltn_iid";
    case Experiment::LtnNiid: return "ltn_niid";
    case Experiment::Rate: return "rate";
    case Experiment::Chain: return "chain";
    case Experiment::Bounds: return "bounds";
    case Experiment::Compound: return "compound";
  }
  return "unknown";
}

std::size_t ExperimentReport::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ParameterError("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double ExperimentReport::at(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

Pmf thinned_sum(const Pmf& p, std::size_t n) {
  if (n == 0) throw ParameterError("n must be at least 1");
  return n_fold(thin(p, 1.0 / static_cast<double>(n)), n);
}

Pmf compound_thinned_sum(const Pmf& p, std::size_t n, const Pmf& q) {
  if (n == 0) throw ParameterError("n must be at least 1");
  return n_fold(compound_thin(p, 1.0 / static_cast<double>(n), q), n);
}

ExperimentReport ltn_iid(const FamilySpec& spec, const std::vector<double>& n_grid,
                         double eps_tail) {
  const auto ns = counts_of(n_grid);
  const auto p = materialize(spec, eps_tail);
  const auto st = summary_stats(p);
  if (!(st.mean > 0.0)) throw ParameterError("ltn needs a positive mean");
  const double lambda = st.mean;
  const auto po = materialize(family::Poisson{lambda}, eps_tail);
  const double h_po = entropy(po).value;

  struct Row {
    std::vector<double> values;
    Estimate kl, tv;
  };
  auto rows = parallel_map<Row>(ns.size(), [&](std::size_t i) {
    const std::size_t n = ns[i];
    const auto t = thinned_sum(p, n);
    Row r;
    r.kl = kl_poisson(t, lambda);
    r.tv = tv_poisson(t, lambda);
    const double nd = static_cast<double>(n);
    const double bv = n >= 2 ? value_or_nan(bound_variance(nd * st.mean, nd * st.variance,
                                                           1.0 / nd, lambda))
                             : kNaN;
    const double bt = n >= 2 ? value_or_nan(bound_tv(st.mean, st.variance, n)) : kNaN;
    r.values = {nd, r.tv.value, r.kl.value, entropy(t).value, h_po, bv, bt};
    return r;
  });

  ExperimentReport rep;
  rep.columns = {"n", "tv", "kl", "entropy", "entropy_po", "bound_variance", "bound_tv"};
  TailTracker tails;
  bool infinite = false;
  for (auto& r : rows) {
    tails.add(r.kl, r.tv);
    infinite = infinite || std::isinf(r.kl.value);
    rep.rows.push_back(std::move(r.values));
  }
  rep.metadata["lambda"] = lambda;
  rep.metadata["variance"] = st.variance;
  rep.metadata["source_tail"] = p.tail();
  rep.metadata["tail_error"] = tails.json();
  if (infinite) rep.metadata["note"] = "kl is infinite: D(P||Po(lambda)) < inf fails";
  return rep;
}

ExperimentReport ltn_niid(const std::vector<FamilySpec>& cycle,
                          const std::vector<double>& n_grid, std::optional<double> lambda,
                          bool alpha_n_variant, double eps_tail) {
  if (cycle.empty()) throw ParameterError("ltn_niid needs at least one distribution");
  const auto ns = counts_of(n_grid);
  for (auto n : ns) {
    if (n < 2) throw ParameterError("ltn_niid needs n >= 2");
  }
  std::vector<Pmf> base;
  std::vector<double> means;
  for (const auto& s : cycle) {
    base.push_back(materialize(s, eps_tail));
    means.push_back(summary_stats(base.back()).mean);
  }
  double cycle_mean = 0.0;
  for (double m : means) cycle_mean += m;
  cycle_mean /= static_cast<double>(cycle.size());
  const double target = lambda.value_or(cycle_mean);
  if (!(target > 0.0)) throw ParameterError("ltn_niid needs a positive limit mean");

  struct Row {
    std::vector<double> values;
    Estimate kl, tv;
  };
  auto rows = parallel_map<Row>(ns.size(), [&](std::size_t i) {
    const std::size_t n = ns[i];
    const double alpha = 1.0 / static_cast<double>(n);
    std::vector<std::size_t> mult(cycle.size(), n / cycle.size());
    for (std::size_t j = 0; j < n % cycle.size(); ++j) ++mult[j];
    double a_n = 0.0, b_n = 0.0, c_n = 0.0, mean_s = 0.0;
    Pmf total = Pmf::point_mass(0);
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      if (mult[j] == 0) continue;
      const auto t = thin(base[j], alpha);
      const double m = static_cast<double>(mult[j]);
      const double not0 = mass_from(t, 1);
      a_n = std::max(a_n, not0);
      b_n += m * not0;
      c_n += m * mass_from(t, 2);
      mean_s += m * means[j];
      total = convolve(total, n_fold(t, mult[j]));
    }
    Row r;
    r.kl = kl_poisson(total, target);
    r.tv = tv_poisson(total, target);
    r.values = {static_cast<double>(n), a_n, b_n, c_n, target, r.tv.value, r.kl.value};
    if (alpha_n_variant) {
      const double an = target / mean_s;
      double kl_an = kNaN;
      if (an > 0.0 && an <= 1.0) {
        Pmf s = Pmf::point_mass(0);
        for (std::size_t j = 0; j < cycle.size(); ++j) {
          if (mult[j] > 0) s = convolve(s, n_fold(thin(base[j], an), mult[j]));
        }
        kl_an = kl_poisson(s, target).value;
      }
      r.values.push_back(kl_an);
    }
    return r;
  });

  ExperimentReport rep;
  rep.columns = {"n", "a_n", "b_n", "c_n", "lambda_n", "tv", "kl"};
  if (alpha_n_variant) rep.columns.push_back("kl_alpha_n");
  TailTracker tails;
  for (auto& r : rows) {
    tails.add(r.kl, r.tv);
    rep.rows.push_back(std::move(r.values));
  }
  rep.metadata["lambda"] = target;
  rep.metadata["cycle_mean"] = cycle_mean;
  rep.metadata["tail_error"] = tails.json();
  return rep;
}

ExperimentReport rate_experiment(const FamilySpec& spec, const std::vector<double>& n_grid,
                                 double eps_tail) {
  const auto ns = counts_of(n_grid);
  const auto p = materialize_for_charlier(spec, eps_tail);
  const double lambda = summary_stats(p).mean;
  const auto rc = rate_constants(p, lambda);
  const auto e = static_cast<double>(rate_exponent(rc));

  struct Row {
    std::vector<double> values;
    Estimate kl;
  };
  auto rows = parallel_map<Row>(ns.size(), [&](std::size_t i) {
    const std::size_t n = ns[i];
    const double nd = static_cast<double>(n);
    const auto one = thin(p, 1.0 / nd);
    Row r;
    r.kl = kl_poisson(n_fold(one, n), lambda);
    const double k = k_info(one);
    const double scale = std::pow(nd, e);
    r.values = {nd, r.kl.value, scale * r.kl.value, k, scale * k};
    return r;
  });

  ExperimentReport rep;
  rep.columns = {"n", "D", "n_kappa_D", "K_thin", "n_kappa_K"};
  double kl_tail = 0.0;
  for (auto& r : rows) {
    kl_tail = std::max(kl_tail, r.kl.tail_error);
    rep.rows.push_back(std::move(r.values));
  }
  rep.metadata["lambda"] = lambda;
  rep.metadata["kappa"] = rc.kappa ? nlohmann::json(*rc.kappa) : nlohmann::json(nullptr);
  rep.metadata["exponent"] = rate_exponent(rc);
  rep.metadata["c"] = rc.c;
  rep.metadata["kappa_c_sq"] = rc.limit;
  rep.metadata["tail_error"] = {{"kl", kl_tail}};
  return rep;
}

ExperimentReport chain_experiment(const FamilySpec& spec, double lambda,
                                  const std::vector<double>& t_grid, double eps_tail) {
  if (t_grid.empty()) throw ParameterError("t grid is empty");
  const auto p = materialize_for_charlier(spec, eps_tail);
  const auto coeffs = lr_coefficients(p, lambda);
  const auto kappa = find_kappa(coeffs);
  const double c = kappa ? coeffs.coeffs[*kappa] : 0.0;
  const auto e = static_cast<double>(2 * kappa.value_or(1));
  const auto traj = chain_trajectory(p, lambda, t_grid);

  ExperimentReport rep;
  rep.columns = {"t", "alpha", "tv", "kl", "chi2", "chi2_series", "chi2_scaled", "kl_over_chi2"};
  double series_tail = 0.0;
  for (const auto& pt : traj) {
    series_tail = std::max(series_tail, chi2_series_tail_bound(coeffs, pt.alpha));
    rep.rows.push_back({pt.t, pt.alpha, pt.tv_to_po, pt.kl_to_po, pt.chi2_to_po,
                        chi2_series(coeffs, pt.alpha), pt.chi2_to_po / std::pow(pt.alpha, e),
                        positive_ratio(pt.kl_to_po, pt.chi2_to_po)});
  }
  rep.metadata["lambda"] = lambda;
  rep.metadata["kappa"] = kappa ? nlohmann::json(*kappa) : nlohmann::json(nullptr);
  rep.metadata["c_kappa"] = c;
  rep.metadata["c_kappa_sq"] = c * c;
  rep.metadata["pb_ratio"] = coeffs.pb_ratio;
  rep.metadata["charlier"] = to_json(coeffs);
  rep.metadata["chi2_series_tail_bound"] = series_tail;
  return rep;
}

ExperimentReport bounds_experiment(const FamilySpec& spec, const std::vector<double>& alpha_grid,
                                   std::optional<double> lambda, double eps_tail) {
  if (alpha_grid.empty()) throw ParameterError("alpha grid is empty");
  const auto p = materialize(spec, eps_tail);
  const double mean = summary_stats(p).mean;
  auto rows = parallel_map<std::vector<double>>(alpha_grid.size(), [&](std::size_t i) {
    const double alpha = alpha_grid[i];
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    const double lam = lambda.value_or(alpha * mean);
    const double d = kl_poisson(thin(p, alpha), lam).value;
    return std::vector<double>{alpha, lam, d, value_or_nan(bound_llogl(p, alpha, lam)),
                               value_or_nan(bound_variance(p, alpha, lam))};
  });
  ExperimentReport rep;
  rep.columns = {"alpha", "lambda", "kl", "bound_llogl", "bound_variance"};
  rep.rows = std::move(rows);
  rep.metadata["mean"] = mean;
  return rep;
}

ExperimentReport compound_experiment(const FamilySpec& spec, const Pmf& q,
                                     const std::vector<double>& n_grid, double eps_tail) {
  const auto ns = counts_of(n_grid);
  if (q[0] != 0.0) throw ParameterError("compounding distribution must put no mass at 0");
  const auto p = materialize(spec, eps_tail);
  const auto st = summary_stats(p);
  if (!(st.mean > 0.0)) throw ParameterError("compound needs a positive mean");
  struct Row {
    std::vector<double> values;
    Estimate kl;
  };
  auto rows = parallel_map<Row>(ns.size(), [&](std::size_t i) {
    const std::size_t n = ns[i];
    const double nd = static_cast<double>(n);
    const auto t = compound_thinned_sum(p, n, q);
    const auto target = compound_poisson(st.mean, q, eps_tail, t.size());
    Row r;
    r.kl = kl(t, target);
    const double bound = n >= 2 ? value_or_nan(bound_variance(nd * st.mean, nd * st.variance,
                                                              1.0 / nd, st.mean))
                                : kNaN;
    r.values = {nd, r.kl.value, bound};
    return r;
  });
  ExperimentReport rep;
  rep.columns = {"n", "kl_to_cpo", "compound_variance_bound"};
  double kl_tail = 0.0;
  for (auto& r : rows) {
    kl_tail = std::max(kl_tail, r.kl.tail_error);
    rep.rows.push_back(std::move(r.values));
  }
  rep.metadata["lambda"] = st.mean;
  rep.metadata["variance"] = st.variance;
  rep.metadata["compounder"] = to_json(q);
  rep.metadata["tail_error"] = {{"kl", kl_tail}};
  return rep;
}

nlohmann::json classes_report(const FamilySpec& spec, std::optional<double> lambda,
                              double eps_tail) {
  const auto p = materialize(spec, eps_tail);
  const double mean = summary_stats(p).mean;
  const double ratio = lambda.value_or(mean);
  nlohmann::json j;
  j["family"] = describe(spec);
  j["mean"] = mean;
  j["ratio"] = ratio;
  j["certificates"] = nlohmann::json::array();
  j["certificates"].push_back(to_json(is_bernoulli_sum(spec)));
  j["certificates"].push_back(to_json(is_ulc(p)));
  if (ratio > 0.0) {
    j["certificates"].push_back(to_json(is_ub(p, ratio)));
    j["certificates"].push_back(to_json(is_pb(p, ratio)));
  }
  j["minimal_pb_ratio"] = minimal_pb_ratio(p);
  return j;
}

void validate(const ExperimentConfig& cfg) {
  const bool n = !cfg.n_grid.empty();
  const bool t = !cfg.t_grid.empty();
  const bool a = !cfg.alpha_grid.empty();
  auto only = [&](bool want_n, bool want_t, bool want_a, const char* name) {
    if (n != want_n || t != want_t || a != want_a) {
      throw ParameterError(std::string(to_string(cfg.experiment)) + " takes exactly one grid: " +
                           name);
    }
  };
  switch (cfg.experiment) {
    case Experiment::LtnIid:
    case Experiment::LtnNiid:
    case Experiment::Rate:
    case Experiment::Compound: only(true, false, false, "--n"); break;
    case Experiment::Chain: only(false, true, false, "--t-grid"); break;
    case Experiment::Bounds: only(false, false, true, "--alpha-grid"); break;
  }
  if (cfg.sources.empty()) throw ParameterError("no source distribution given");
  if (cfg.experiment != Experiment::LtnNiid && cfg.sources.size() != 1) {
    throw ParameterError(to_string(cfg.experiment) + " takes a single source distribution");
  }
  if (cfg.experiment == Experiment::Chain && !cfg.lambda) {
    throw ParameterError("chain needs --lambda");
  }
}

ExperimentReport run(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  const auto& src = cfg.sources.front();
  switch (cfg.experiment) {
    case Experiment::LtnIid: rep = ltn_iid(src, cfg.n_grid, cfg.eps_tail); break;
    case Experiment::LtnNiid:
      rep = ltn_niid(cfg.sources, cfg.n_grid, cfg.lambda, cfg.alpha_n_variant, cfg.eps_tail);
      break;
    case Experiment::Rate: rep = rate_experiment(src, cfg.n_grid, cfg.eps_tail); break;
    case Experiment::Chain: rep = chain_experiment(src, *cfg.lambda, cfg.t_grid, cfg.eps_tail); break;
    case Experiment::Bounds:
      rep = bounds_experiment(src, cfg.alpha_grid, cfg.lambda, cfg.eps_tail);
      break;
    case Experiment::Compound:
      rep = compound_experiment(src, cfg.compounder.value_or(Pmf::point_mass(1)), cfg.n_grid,
                                cfg.eps_tail);
      break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  nlohmann::json echo;
  echo["experiment"] = to_string(cfg.experiment);
  echo["sources"] = nlohmann::json::array();
  for (const auto& s : cfg.sources) echo["sources"].push_back(describe(s));
  echo["lambda"] = cfg.lambda ? nlohmann::json(*cfg.lambda) : nlohmann::json(nullptr);
  echo["n_grid"] = cfg.n_grid;
  echo["t_grid"] = cfg.t_grid;
  echo["alpha_grid"] = cfg.alpha_grid;
  echo["eps_tail"] = cfg.eps_tail;
  rep.metadata["config"] = echo;
  rep.metadata["wall_time_s"] = elapsed.count();
  return rep;
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out << (i ? "," : "") << r.columns[i];
  }
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[r.columns[i]] = std::isfinite(row[i]) ? nlohmann::json(row[i]) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(obj));
  }
  return {{"columns", r.columns}, {"rows", rows}, {"metadata", r.metadata}};
}

}  // namespace thinlaw
