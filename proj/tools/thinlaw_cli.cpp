#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thinlaw/errors.hpp"
#include "thinlaw/harness.hpp"
#include "thinlaw/io.hpp"

namespace {

struct Options {
  std::vector<std::string> families;
  std::string pmf_file;
  std::optional<double> lambda;
  std::string n_grid;
  std::string t_grid;
  std::string alpha_grid;
  double eps_tail = thinlaw::kDefaultEpsTail;
  std::string out;
  std::string format = "csv";
  std::string compounder;
  bool alpha_n = false;
};

void add_common(CLI::App* sub, Options& o, bool many_families = false) {
  if (many_families) {
    sub->add_option("--family", o.families, "family spec, repeat to build a cycle");
  } else {
    sub->add_option("--family", o.families, "family spec, e.g. poisson:2 or binomial:5,0.4")
        ->expected(1);
  }
  sub->add_option("--pmf-file", o.pmf_file, "PMF JSON {\"probs\":[...],\"tail\":t}");
  sub->add_option("--lambda", o.lambda, "reference Poisson mean");
  sub->add_option("--eps-tail", o.eps_tail, "truncation tail mass")->capture_default_str();
  sub->add_option("--out", o.out, "output path (stdout when empty)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::vector<thinlaw::FamilySpec> sources(const Options& o) {
  std::vector<thinlaw::FamilySpec> out;
  for (const auto& f : o.families) out.push_back(thinlaw::parse_family(f));
  if (!o.pmf_file.empty()) {
    out.push_back(thinlaw::family::Empirical{thinlaw::read_pmf_file(o.pmf_file)});
  }
  if (out.empty()) throw thinlaw::ParameterError("give --family or --pmf-file");
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw thinlaw::ParameterError("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thinning of integer-valued laws: laws of thin numbers, rates and bounds"};
  app.require_subcommand(1);
  Options o;

  struct Sub {
    CLI::App* app;
    std::optional<thinlaw::Experiment> kind;
  };
  std::vector<Sub> subs;

  auto* ltn = app.add_subcommand("ltn", "T_{1/n}(P^{*n}) against Po(mean)");
  add_common(ltn, o);
  ltn->add_option("--n", o.n_grid, "n grid")->required();
  subs.push_back({ltn, thinlaw::Experiment::LtnIid});

  auto* niid = app.add_subcommand("ltn-niid", "thinned sums of a cycled list of laws");
  add_common(niid, o, true);
  niid->add_option("--n", o.n_grid, "n grid")->required();
  niid->add_flag("--alpha-n", o.alpha_n, "also thin by lambda/E(S_n)");
  subs.push_back({niid, thinlaw::Experiment::LtnNiid});

  auto* rate = app.add_subcommand("rate", "n^kappa scaling of D and K");
  add_common(rate, o);
  rate->add_option("--n", o.n_grid, "n grid")->required();
  subs.push_back({rate, thinlaw::Experiment::Rate});

  auto* chain = app.add_subcommand("chain", "thinning Markov chain toward Po(lambda)");
  add_common(chain, o);
  chain->add_option("--t-grid", o.t_grid, "time grid")->required();
  subs.push_back({chain, thinlaw::Experiment::Chain});

  auto* bounds = app.add_subcommand("bounds", "D(T_a P || Po) against closed-form bounds");
  add_common(bounds, o);
  bounds->add_option("--alpha-grid", o.alpha_grid, "alpha grid")->required();
  subs.push_back({bounds, thinlaw::Experiment::Bounds});

  auto* compound = app.add_subcommand("compound", "compound thinning toward CPo(lambda, Q)");
  add_common(compound, o);
  compound->add_option("--n", o.n_grid, "n grid")->required();
  compound->add_option("--compounder", o.compounder,
                       "compounding law on {1,2,...}: family spec or PMF JSON path");
  subs.push_back({compound, thinlaw::Experiment::Compound});

  auto* classes = app.add_subcommand("classes", "class certificates as JSON");
  add_common(classes, o);
  subs.push_back({classes, std::nullopt});

  CLI11_PARSE(app, argc, argv);

  try {
    const Sub* active = nullptr;
    for (const auto& s : subs) {
      if (s.app->parsed()) active = &s;
    }
    if (!active->kind) {
      const auto src = sources(o);
      if (src.size() != 1) throw thinlaw::ParameterError("classes takes a single distribution");
      emit(o, thinlaw::classes_report(src.front(), o.lambda, o.eps_tail).dump(2) + "\n");
      return 0;
    }
    thinlaw::ExperimentConfig cfg;
    cfg.experiment = *active->kind;
    cfg.sources = sources(o);
    cfg.lambda = o.lambda;
    cfg.eps_tail = o.eps_tail;
    cfg.alpha_n_variant = o.alpha_n;
    if (!o.n_grid.empty()) cfg.n_grid = thinlaw::parse_grid(o.n_grid);
    if (!o.t_grid.empty()) cfg.t_grid = thinlaw::parse_grid(o.t_grid);
    if (!o.alpha_grid.empty()) cfg.alpha_grid = thinlaw::parse_grid(o.alpha_grid);
    if (!o.compounder.empty()) {
      if (o.compounder.ends_with(".json")) {
        cfg.compounder = thinlaw::read_pmf_file(o.compounder);
      } else {
        cfg.compounder =
            thinlaw::materialize(thinlaw::parse_family(o.compounder), o.eps_tail);
      }
    }
    cfg.output = o.out;
    cfg.format = o.format == "json" ? thinlaw::OutputFormat::Json : thinlaw::OutputFormat::Csv;
    const auto rep = thinlaw::run(cfg);
    emit(o, cfg.format == thinlaw::OutputFormat::Json ? thinlaw::to_json(rep).dump(2) + "\n"
                                                      : thinlaw::to_csv(rep));
    return 0;
  } catch (const thinlaw::HypothesisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
