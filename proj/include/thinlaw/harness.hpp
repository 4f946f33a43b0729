#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

inline constexpr std::size_t kMaxN = 4096;

enum class Experiment { LtnIid, LtnNiid, Rate, Chain, Bounds, Compound };
enum class OutputFormat { Csv, Json };

std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::LtnIid;
  std::vector<FamilySpec> sources;
  std::optional<double> lambda;
  std::vector<double> n_grid;
  std::vector<double> t_grid;
  std::vector<double> alpha_grid;
  double eps_tail = kDefaultEpsTail;
  /// Compounding law for the compound experiment, δ₁ when absent.
  std::optional<Pmf> compounder;
  /// ltn_niid: add the kl column for thinning by λ/E(S_n).
  bool alpha_n_variant = false;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
};

/// One row per grid point; every row has one value per column.
struct ExperimentReport {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const;
};

/// Rejects configs whose grid does not match the experiment or is empty.
void validate(const ExperimentConfig& cfg);

ExperimentReport ltn_iid(const FamilySpec& p, const std::vector<double>& n_grid,
                         double eps_tail = kDefaultEpsTail);
ExperimentReport ltn_niid(const std::vector<FamilySpec>& cycle,
                          const std::vector<double>& n_grid,
                          std::optional<double> lambda = std::nullopt,
                          bool alpha_n_variant = false,
                          double eps_tail = kDefaultEpsTail);
ExperimentReport rate_experiment(const FamilySpec& p, const std::vector<double>& n_grid,
                                 double eps_tail = kDefaultEpsTail);
ExperimentReport chain_experiment(const FamilySpec& p, double lambda,
                                  const std::vector<double>& t_grid,
                                  double eps_tail = kDefaultEpsTail);
ExperimentReport bounds_experiment(const FamilySpec& p, const std::vector<double>& alpha_grid,
                                   std::optional<double> lambda = std::nullopt,
                                   double eps_tail = kDefaultEpsTail);
ExperimentReport compound_experiment(const FamilySpec& p, const Pmf& q,
                                     const std::vector<double>& n_grid,
                                     double eps_tail = kDefaultEpsTail);

/// Certificates for every class, as JSON.
nlohmann::json classes_report(const FamilySpec& p, std::optional<double> lambda = std::nullopt,
                              double eps_tail = kDefaultEpsTail);

/// Dispatches on cfg.experiment; metadata gets the config echo and wall time.
ExperimentReport run(const ExperimentConfig& cfg);

/// Header line plus one line per row, numbers as %.12g. Deterministic.
std::string to_csv(const ExperimentReport& r);
nlohmann::json to_json(const ExperimentReport& r);

/// T_{1/n}(P^{*n}), computed as (T_{1/n}P)^{*n}.
Pmf thinned_sum(const Pmf& p, std::size_t n);

/// T_{1/n,Q}(P^{*n}), computed as (T_{1/n,Q}P)^{*n}.
Pmf compound_thinned_sum(const Pmf& p, std::size_t n, const Pmf& q);

}  // namespace thinlaw
