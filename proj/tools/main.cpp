// Command-line front end: CSV in, JSON/CSV reports out.  Every failure
// exits non-zero with a one-line machine-readable JSON error on stderr.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gb3reg/gb3.hpp"
#include "gb3reg/io.hpp"
#include "gb3reg/parallel.hpp"

using namespace gb3reg;

namespace {

struct FitArgs {
  std::string data_path;
  std::string response;
  std::string out_path;
  std::vector<std::string> mu_terms, alpha_terms, beta_terms, log_cols;
  std::vector<double> taus;
  std::string link = "logit";
  double threshold = 0.05;
  double tol_grad = 1e-5;
  double tol_rel = 1e-9;
  int max_iter = 500;
  unsigned workers = default_workers();
};

void add_fit_options(CLI::App* cmd, FitArgs& a, bool with_threshold) {
  cmd->add_option("--data", a.data_path, "input CSV file")->required();
  cmd->add_option("--response", a.response, "response column name")->required();
  cmd->add_option("--mu-terms", a.mu_terms, "covariates of the quantile predictor")
      ->delimiter(',');
  cmd->add_option("--alpha-terms", a.alpha_terms, "covariates of the alpha predictor")
      ->delimiter(',');
  cmd->add_option("--beta-terms", a.beta_terms, "covariates of the beta predictor")
      ->delimiter(',');
  cmd->add_option("--log", a.log_cols, "column to log-transform (repeatable)")
      ->delimiter(',');
  cmd->add_option("--tau", a.taus, "quantile level(s), default 0.5")->delimiter(',');
  cmd->add_option("--link", a.link, "quantile link: logit|probit|loglog|cloglog");
  if (with_threshold)
    cmd->add_option("--threshold", a.threshold, "Wald p-value elimination threshold");
  cmd->add_option("--tol-grad", a.tol_grad, "gradient sup-norm tolerance");
  cmd->add_option("--tol-rel", a.tol_rel, "relative objective-change tolerance");
  cmd->add_option("--max-iter", a.max_iter, "optimizer iteration cap");
  cmd->add_option("--out", a.out_path, "output path (default: stdout)");
  cmd->add_option("--workers", a.workers, "worker threads (default: available cores)");
}

void check_taus(const std::vector<double>& taus) {
  for (double t : taus)
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument("--tau values must lie in (0, 1)");
  for (std::size_t i = 0; i < taus.size(); ++i)
    for (std::size_t j = i + 1; j < taus.size(); ++j)
      if (taus[i] == taus[j]) throw std::invalid_argument("--tau values must be distinct");
}

ModelSpec spec_from_args(const FitArgs& a, double tau) {
  ModelSpec spec;
  spec.tau = tau;
  spec.mu_link = parse_link(a.link);
  spec.mu_terms = a.mu_terms;
  spec.alpha_terms = a.alpha_terms;
  spec.beta_terms = a.beta_terms;
  return spec;
}

Tolerance tolerance_from_args(const FitArgs& a) {
  Tolerance tol = fit_tolerance();
  tol.abs_tol = a.tol_grad;
  tol.rel_tol = a.tol_rel;
  tol.max_iter = a.max_iter;
  return tol;
}

void emit(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error(out_path + ": cannot open for writing");
  writer(os);
  if (!os) throw std::runtime_error(out_path + ": write failed");
}

int run_fit(const FitArgs& args) {
  std::vector<double> taus = args.taus.empty() ? std::vector<double>{0.5} : args.taus;
  check_taus(taus);
  const Dataset data = ingest_csv(args.data_path, {args.response, args.log_cols});
  const Tolerance tol = tolerance_from_args(args);

  std::vector<Json> reports(taus.size());
  parallel_for(taus.size(), args.workers, [&](std::size_t i) {
    const ModelSpec spec = spec_from_args(args, taus[i]);
    reports[i] = fit_report_json(fit(spec, data, std::nullopt, tol));
  });

  Json out;
  out["command"] = "fit";
  out["input"] = args.data_path;
  out["response"] = args.response;
  out["dataset_hash"] = dataset_hash(data);
  out["fits"] = Json::array();
  for (auto& r : reports) out["fits"].push_back(std::move(r));
  emit(args.out_path, [&](std::ostream& os) { json_dump(out, os); });
  return 0;
}

int run_residuals(const FitArgs& args) {
  std::vector<double> taus = args.taus.empty() ? std::vector<double>{0.5} : args.taus;
  if (taus.size() != 1)
    throw std::invalid_argument("residuals runs one quantile at a time; pass a single --tau");
  check_taus(taus);
  if (args.out_path.empty())
    throw std::invalid_argument("residuals requires --out for the CSV export");
  const Dataset data = ingest_csv(args.data_path, {args.response, args.log_cols});
  const ModelSpec spec = spec_from_args(args, taus[0]);
  const FitResult fr = fit(spec, data, std::nullopt, tolerance_from_args(args));
  const ResidualReport rep = rq_residuals(fr, data);
  emit(args.out_path, [&](std::ostream& os) { write_residual_csv(rep, os); });

  Json out;
  out["command"] = "residuals";
  out["input"] = args.data_path;
  out["dataset_hash"] = dataset_hash(data);
  out["tau"] = taus[0];
  out["n"] = data.n();
  out["n_clamped"] = rep.n_clamped;
  out["out"] = args.out_path;
  json_dump(out, std::cout);
  return 0;
}

int run_select(const FitArgs& args) {
  std::vector<double> taus = args.taus.empty() ? std::vector<double>{0.5} : args.taus;
  if (taus.size() != 1)
    throw std::invalid_argument("select runs one quantile at a time; pass a single --tau");
  check_taus(taus);
  if (!(args.threshold > 0.0 && args.threshold < 1.0))
    throw std::invalid_argument("--threshold must lie in (0, 1)");
  const Dataset data = ingest_csv(args.data_path, {args.response, args.log_cols});
  const ModelSpec spec = spec_from_args(args, taus[0]);
  const EliminationTrace trace =
      backward_eliminate(spec, data, args.threshold, tolerance_from_args(args));

  Json out;
  out["command"] = "select";
  out["input"] = args.data_path;
  out["response"] = args.response;
  out["dataset_hash"] = dataset_hash(data);
  out["elimination"] = trace_json(trace, args.threshold);
  emit(args.out_path, [&](std::ostream& os) { json_dump(out, os); });
  return 0;
}

struct SimArgs {
  std::string scenario_path;
  std::string out_path;
  std::optional<int> reps_override;
  std::optional<std::uint64_t> seed_override;
  unsigned workers = default_workers();
};

void add_sim_options(CLI::App* cmd, SimArgs& a) {
  cmd->add_option("--scenario", a.scenario_path, "scenario key=value file")->required();
  cmd->add_option("--reps", a.reps_override, "override the scenario replication count");
  cmd->add_option("--seed", a.seed_override, "override the scenario seed");
  cmd->add_option("--out", a.out_path, "output path (default: stdout)");
  cmd->add_option("--workers", a.workers, "worker threads (default: available cores)");
}

ScenarioConfig scenario_from_args(const SimArgs& args) {
  ScenarioConfig cfg = parse_scenario(args.scenario_path);
  if (args.reps_override) cfg.replications = *args.reps_override;
  if (args.seed_override) cfg.seed = *args.seed_override;
  validate(cfg);
  return cfg;
}

int run_simulate_recovery(const SimArgs& args) {
  const ScenarioConfig cfg = scenario_from_args(args);
  const RecoveryReport rep = recovery_study(cfg, args.workers);
  emit(args.out_path, [&](std::ostream& os) { write_recovery_csv(rep, cfg, os); });
  return 0;
}

int run_simulate_links(const SimArgs& args) {
  const ScenarioConfig cfg = scenario_from_args(args);
  const LinkChoiceReport rep = link_choice_study(cfg, args.workers);
  emit(args.out_path, [&](std::ostream& os) { write_link_choice_csv(rep, cfg, os); });
  return 0;
}

struct GridArgs {
  std::vector<std::string> params;  // "lambda,alpha,beta" triples
  std::string out_path;
};

int run_pdf_grid(const GridArgs& args) {
  if (args.params.empty())
    throw std::invalid_argument("pdf-grid needs at least one --params lambda,alpha,beta triple");
  std::vector<Gb3Params> combos;
  for (const std::string& triple : args.params) {
    std::stringstream ss(triple);
    std::string piece;
    std::vector<double> vals;
    while (std::getline(ss, piece, ',')) {
      char* end = nullptr;
      const double v = std::strtod(piece.c_str(), &end);
      if (end != piece.c_str() + piece.size())
        throw std::invalid_argument("--params: cannot parse '" + piece + "' in '" + triple + "'");
      vals.push_back(v);
    }
    if (vals.size() != 3)
      throw std::invalid_argument("--params expects lambda,alpha,beta; got '" + triple + "'");
    Gb3Params p{vals[0], vals[1], vals[2]};
    validate(p);
    combos.push_back(p);
  }
  constexpr int kGrid = 512;
  emit(args.out_path, [&](std::ostream& os) {
    os << "lambda,alpha,beta,y,density\n";
    for (const Gb3Params& p : combos) {
      for (int k = 0; k < kGrid; ++k) {
        const double y = (k + 0.5) / kGrid;
        os << format_full(p.lambda) << ',' << format_full(p.alpha) << ',' << format_full(p.beta)
           << ',' << format_full(y) << ',' << format_full(gb3_pdf(y, p)) << '\n';
      }
    }
  });
  return 0;
}

struct SampleArgs {
  int n = 100;
  std::uint64_t seed = 1;
  double lambda = 0.0;  // direct parameterization when > 0
  double mu = 0.0;      // quantile parameterization when set
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.5;
  std::string out_path;
};

int run_sample(const SampleArgs& args) {
  if (args.n < 1) throw std::invalid_argument("--n must be at least 1");
  const bool quantile_form = args.mu != 0.0;
  if (quantile_form && args.lambda != 0.0)
    throw std::invalid_argument("pass either --lambda or --mu, not both");
  Rng rng(args.seed);
  emit(args.out_path, [&](std::ostream& os) {
    os << "y\n";
    if (quantile_form) {
      const QuantileGb3Params p{args.mu, args.alpha, args.beta, args.tau};
      validate(p);
      for (int i = 0; i < args.n; ++i) os << format_full(gb3_sample(p, rng)) << '\n';
    } else {
      const Gb3Params p{args.lambda, args.alpha, args.beta};
      validate(p);
      for (int i = 0; i < args.n; ++i) os << format_full(gb3_sample(p, rng)) << '\n';
    }
  });
  return 0;
}

int fail_json(const std::string& command, const std::string& message, int code) {
  Json err;
  err["error"] = Json{{"command", command}, {"message", message}};
  json_dump(err, std::cerr, 0);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantile-parameterized GB3 regression"};
  app.require_subcommand(1);

  FitArgs fit_args, resid_args, select_args;
  SimArgs recov_args, links_args;
  GridArgs grid_args;
  SampleArgs sample_args;

  CLI::App* c_fit = app.add_subcommand("fit", "fit the model at one or more quantile levels");
  add_fit_options(c_fit, fit_args, false);
  CLI::App* c_res = app.add_subcommand("residuals", "fit, then export quantile residuals");
  add_fit_options(c_res, resid_args, false);
  CLI::App* c_sel = app.add_subcommand("select", "backward elimination by Wald p-values");
  add_fit_options(c_sel, select_args, true);
  CLI::App* c_rec =
      app.add_subcommand("simulate-recovery", "parameter-recovery Monte Carlo study");
  add_sim_options(c_rec, recov_args);
  CLI::App* c_lnk = app.add_subcommand("simulate-links", "link-choice Monte Carlo study");
  add_sim_options(c_lnk, links_args);
  CLI::App* c_grid = app.add_subcommand("pdf-grid", "density values over a 512-point grid");
  c_grid->add_option("--params", grid_args.params, "lambda,alpha,beta triple (repeatable)");
  c_grid->add_option("--out", grid_args.out_path, "output path (default: stdout)");
  CLI::App* c_smp = app.add_subcommand("sample", "draw i.i.d. variates");
  c_smp->add_option("--n", sample_args.n, "number of draws");
  c_smp->add_option("--seed", sample_args.seed, "random seed");
  c_smp->add_option("--lambda", sample_args.lambda, "skew parameter (direct form)");
  c_smp->add_option("--mu", sample_args.mu, "tau-quantile (quantile form)");
  c_smp->add_option("--alpha", sample_args.alpha, "first shape")->required();
  c_smp->add_option("--beta", sample_args.beta, "second shape")->required();
  c_smp->add_option("--tau", sample_args.tau, "quantile level for --mu form");
  c_smp->add_option("--out", sample_args.out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    return fail_json("parse", e.what(), e.get_exit_code() ? e.get_exit_code() : 2);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (c_fit->parsed()) return run_fit(fit_args);
    if (c_res->parsed()) return run_residuals(resid_args);
    if (c_sel->parsed()) return run_select(select_args);
    if (c_rec->parsed()) return run_simulate_recovery(recov_args);
    if (c_lnk->parsed()) return run_simulate_links(links_args);
    if (c_grid->parsed()) return run_pdf_grid(grid_args);
    if (c_smp->parsed()) return run_sample(sample_args);
  } catch (const std::exception& e) {
    return fail_json(command, e.what(), 1);
  }
  return fail_json(command, "unhandled command", 2);
}
