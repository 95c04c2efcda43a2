// Acceptance gate for the library and command-line tool.  Each numbered
// criterion prints exactly one PASS/FAIL line with the measured
// quantities inline; the process exits non-zero if any enabled
// criterion fails.
//
// Usage: acceptance --cli <path-to-binary> [--only <k> ...]
//
// The Monte Carlo criteria use fixed seeds so every run is exactly
// reproducible; targets and windows are pinned constants below.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gb3reg/diagnostics.hpp"
#include "gb3reg/gb3.hpp"
#include "gb3reg/io.hpp"
#include "gb3reg/regression.hpp"
#include "gb3reg/rng.hpp"
#include "gb3reg/selection.hpp"
#include "gb3reg/simulation.hpp"
#include "oracles.hpp"

using namespace gb3reg;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// The simulation-study generating coefficients used throughout the
// Monte Carlo criteria: quantile predictor on (1, t1, t2), log-alpha on
// (1, t1, t2), log-beta on (1, t3), standard normal covariates.
ScenarioConfig study_config(int n, double tau, Link link, int reps, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n = n;
  cfg.tau = tau;
  cfg.true_link = link;
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.theta = Eigen::Vector3d(-2.0, 1.5, 0.3);
  cfg.nu = Eigen::Vector3d(1.0, -0.4, 0.7);
  cfg.eta = Eigen::Vector2d(1.0, -0.5);
  return cfg;
}

// ---------------------------------------------------------------- 1 --
// Distribution identities: quantile/CDF round trip, beta reduction,
// complement law, unit normalization, and the first-kind-beta
// cross-parameterization.
Outcome criterion1() {
  Rng rng(1001);
  double worst_rt = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Gb3Params p{std::exp(4.0 * rng.uniform() - 2.0),
                      std::exp(3.5 * rng.uniform() - 1.0),
                      std::exp(3.5 * rng.uniform() - 1.0)};
    const double prob = 0.005 + 0.99 * rng.uniform();
    const double q = gb3_quantile(prob, p);
    worst_rt = std::max(worst_rt, std::fabs(gb3_cdf(q, p) - prob));
  }
  if (worst_rt > 1e-8)
    return {false, fmt("cdf(quantile(p)) error %.3g exceeds 1e-8", worst_rt)};

  double worst_beta = 0.0;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (double y = 0.05; y < 1.0; y += 0.15) {
        const Gb3Params p{1.0, double(a), double(b)};
        worst_beta = std::max(
            worst_beta, std::fabs(gb3_cdf(y, p) - oracle::binomial_inc_beta(y, a, b)));
        const double ref = std::exp(oracle::beta_logpdf(y, a, b));
        worst_beta = std::max(worst_beta, std::fabs(gb3_pdf(y, p) - ref) / ref);
      }
  if (worst_beta > 1e-10)
    return {false, fmt("beta reduction error %.3g exceeds 1e-10", worst_beta)};

  double worst_comp = 0.0;
  for (double lam : {0.25, 1.0, 4.0})
    for (double a : {0.7, 2.0, 5.0})
      for (double b : {0.7, 2.0, 5.0})
        for (double y : {0.125, 0.25, 0.5, 0.75, 0.875}) {
          const double direct = gb3_cdf(y, {lam, a, b});
          const double mirrored = gb3_cdf(1.0 - y, {1.0 / lam, b, a});
          worst_comp = std::max(worst_comp, std::fabs(direct + mirrored - 1.0));
        }
  if (worst_comp > 1e-10)
    return {false, fmt("complement law error %.3g exceeds 1e-10", worst_comp)};

  double worst_norm = 0.0;
  for (double lam : {0.2, 0.8, 1.0, 2.5, 10.0})
    for (auto [a, b] : {std::pair{0.6, 1.4}, {2.0, 2.0}, {5.0, 1.2}, {1.0, 3.0}}) {
      const Gb3Params p{lam, a, b};
      const double mass =
          oracle::integrate01([&](double u, double) { return gb3_pdf(u, p); });
      worst_norm = std::max(worst_norm, std::fabs(mass - 1.0));
    }
  if (worst_norm > 1e-7)
    return {false, fmt("pdf normalization error %.3g exceeds 1e-7", worst_norm)};

  double worst_gb1 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double lam = std::exp(4.0 * rng.uniform() - 2.0);
    const double a = std::exp(3.0 * rng.uniform() - 1.0);
    const double b = std::exp(3.0 * rng.uniform() - 1.0);
    const double y = 0.02 + 0.96 * rng.uniform();
    const double lhs = gb3_pdf(y, {lam, a, b});
    const double rhs = gb1_pdf(y, a / (a + b), 1.0 / std::sqrt(a + b + 1.0), 1.0 / lam, 1.0);
    worst_gb1 = std::max(worst_gb1, std::fabs(lhs - rhs) / std::max(1.0, rhs));
  }
  if (worst_gb1 > 1e-10)
    return {false, fmt("first-kind-beta equivalence error %.3g exceeds 1e-10", worst_gb1)};

  return {true, fmt("roundtrip %.2g, beta %.2g, complement %.2g, mass %.2g, gb1 %.2g",
                    worst_rt, worst_beta, worst_comp, worst_norm, worst_gb1)};
}

// ---------------------------------------------------------------- 2 --
// Special functions: closed-form incomplete-beta values, inversion
// round trip, and the normal quantile/CDF round trip.
Outcome criterion2() {
  const double known = inc_beta_ratio(0.3, 2.0, 3.0);
  if (std::fabs(known - 0.3483) > 1e-10)
    return {false, fmt("I_0.3(2,3) = %.12f differs from 0.3483", known)};

  double worst_closed = 0.0;
  for (auto [a, b] : {std::pair{1, 1}, {2, 3}, {4, 2}, {5, 5}, {3, 7}})
    for (double x : {0.1, 0.3, 0.42, 0.5, 0.77, 0.9})
      worst_closed = std::max(
          worst_closed, std::fabs(inc_beta_ratio(x, a, b) - oracle::binomial_inc_beta(x, a, b)));
  if (worst_closed > 1e-10)
    return {false, fmt("closed-form error %.3g exceeds 1e-10", worst_closed)};

  double worst_inv = 0.0;
  for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
    for (double b : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
      for (double p : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        const double z = inv_inc_beta(p, a, b);
        worst_inv = std::max(worst_inv, std::fabs(inc_beta_ratio(z, a, b) - p));
      }
  if (worst_inv > 1e-9)
    return {false, fmt("inversion round-trip error %.3g exceeds 1e-9", worst_inv)};

  double worst_np = 0.0;
  for (double p = 0.001; p < 0.9995; p += 0.002)
    worst_np = std::max(worst_np, std::fabs(normal_cdf(normal_quantile(p)) - p));
  // the x-direction stays below 1e-10 while phi(x) is large enough for
  // p-rounding not to dominate
  for (double x = -4.0; x <= 4.0; x += 0.25)
    worst_np = std::max(worst_np, std::fabs(normal_quantile(normal_cdf(x)) - x));
  if (worst_np > 1e-10)
    return {false, fmt("normal round-trip error %.3g exceeds 1e-10", worst_np)};

  return {true, fmt("closed-form %.2g, inversion %.2g, normal %.2g", worst_closed,
                    worst_inv, worst_np)};
}

// ---------------------------------------------------------------- 3 --
// Likelihood consistency: the model log likelihood is the sum of
// per-observation log densities, and the score vanishes at an optimum.
Outcome criterion3() {
  double worst_sum = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ScenarioConfig cfg = study_config(50, 0.25, Link::logit, 1, 300 + trial);
    Rng rng(cfg.seed);
    const Dataset data = simulate_dataset(cfg, rng);
    Coefficients c;
    c.theta = cfg.theta;
    c.nu = cfg.nu;
    c.eta = cfg.eta;
    const ModelSpec spec = scenario_spec(cfg);
    const Predictors pred = predictors(spec, data, c);
    double direct = 0.0;
    for (int i = 0; i < data.n(); ++i)
      direct += qgb3_logpdf(data.y()[static_cast<std::size_t>(i)],
                            QuantileGb3Params{pred.mu[i], pred.alpha[i], pred.beta[i], cfg.tau});
    worst_sum = std::max(worst_sum, std::fabs(log_likelihood(spec, data, c) - direct));
  }
  if (worst_sum > 1e-10)
    return {false, fmt("log-likelihood sum mismatch %.3g exceeds 1e-10", worst_sum)};

  ScenarioConfig cfg = study_config(305, 0.25, Link::logit, 1, 310);
  Rng rng(cfg.seed);
  const Dataset data = simulate_dataset(cfg, rng);
  const FitResult fr = fit(scenario_spec(cfg), data);
  if (!fr.converged) return {false, "reference fit did not converge"};
  const double gnorm = score(scenario_spec(cfg), data, fr.coef).cwiseAbs().maxCoeff();
  if (!(gnorm < 1e-4))
    return {false, fmt("score at optimum %.3g not below 1e-4", gnorm)};

  return {true, fmt("sum mismatch %.2g, score at optimum %.2g", worst_sum, gnorm)};
}

// ---------------------------------------------------------------- 4 --
// Finite-difference score and observed information against Richardson
// extrapolated derivatives of the log likelihood.
Outcome criterion4() {
  ScenarioConfig cfg = study_config(200, 0.25, Link::logit, 1, 404);
  Rng rng(cfg.seed);
  const Dataset data = simulate_dataset(cfg, rng);
  const ModelSpec spec = scenario_spec(cfg);
  // evaluate away from both the truth and the optimum
  Eigen::VectorXd packed(8);
  packed << cfg.theta, cfg.nu, cfg.eta;
  packed[0] += 0.2;
  packed[3] -= 0.15;
  packed[7] += 0.1;
  auto unpack = [](const Eigen::VectorXd& v) {
    Coefficients c;
    c.theta = v.segment(0, 3);
    c.nu = v.segment(3, 3);
    c.eta = v.segment(6, 2);
    return c;
  };
  auto ll = [&](const Eigen::VectorXd& v) { return log_likelihood(spec, data, unpack(v)); };

  const Eigen::VectorXd g = score(spec, data, unpack(packed));
  double worst_score = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double ref = oracle::derivative(
        [&](double t) {
          Eigen::VectorXd v = packed;
          v[j] = t;
          return ll(v);
        },
        packed[j], 1e-2);
    worst_score = std::max(worst_score, std::fabs(g[j] - ref) / std::max(1.0, std::fabs(ref)));
  }
  if (worst_score > 1e-5)
    return {false, fmt("score error %.3g exceeds 1e-5 relative", worst_score)};

  const Eigen::MatrixXd info = observed_information(spec, data, unpack(packed));
  double worst_info = 0.0;
  for (int j = 0; j < 8; ++j)
    for (int k = j; k < 8; ++k) {
      const double ref = oracle::richardson_h2(
          [&](double h) {
            Eigen::VectorXd vpp = packed, vpm = packed, vmp = packed, vmm = packed;
            vpp[j] += h;
            vpp[k] += h;
            vpm[j] += h;
            vpm[k] -= h;
            vmp[j] -= h;
            vmp[k] += h;
            vmm[j] -= h;
            vmm[k] -= h;
            return (ll(vpp) - ll(vpm) - ll(vmp) + ll(vmm)) / (4.0 * h * h);
          },
          1e-2, 5);
      worst_info =
          std::max(worst_info, std::fabs(info(j, k) + ref) / std::max(1.0, std::fabs(ref)));
    }
  if (worst_info > 1e-4)
    return {false, fmt("information error %.3g exceeds 1e-4 relative", worst_info)};

  return {true, fmt("score %.2g relative, information %.2g relative", worst_score, worst_info)};
}

// ---------------------------------------------------------------- 5 --
// Estimator recovery at 250 replications: quantile-intercept bias,
// mean SE, and coverage at n = 305 sit inside the pinned windows,
// with bias magnitude and RMSE shrinking as n grows.
Outcome criterion5() {
  constexpr double kBiasTarget = 0.0076, kBiasWindow = 0.02;
  constexpr double kSeTarget = 0.0656, kSeWindow = 0.01;
  constexpr double kCpTarget = 0.928, kCpWindow = 0.04;
  const std::uint64_t seed = 5051;

  double bias[3], rmse[3], mean_se[3], cp[3];
  int used[3];
  const int ns[3] = {100, 200, 305};
  for (int i = 0; i < 3; ++i) {
    ScenarioConfig cfg = study_config(ns[i], 0.25, Link::logit, 250, seed);
    const RecoveryReport rep = recovery_study(cfg, 1);
    bias[i] = rep.bias[0];
    rmse[i] = rep.rmse[0];
    mean_se[i] = rep.mean_se[0];
    cp[i] = rep.cp95[0];
    used[i] = rep.used;
  }
  const std::string detail = fmt(
      "n=305: bias %.4f (target %.4f±%.2f), se %.4f (target %.4f±%.2f), cp %.3f "
      "(target %.3f±%.2f); |bias| %.4f/%.4f/%.4f, rmse %.4f/%.4f/%.4f, used %d/%d/%d",
      bias[2], kBiasTarget, kBiasWindow, mean_se[2], kSeTarget, kSeWindow, cp[2], kCpTarget,
      kCpWindow, std::fabs(bias[0]), std::fabs(bias[1]), std::fabs(bias[2]), rmse[0], rmse[1],
      rmse[2], used[0], used[1], used[2]);

  const bool in_windows = std::fabs(bias[2] - kBiasTarget) <= kBiasWindow &&
                          std::fabs(mean_se[2] - kSeTarget) <= kSeWindow &&
                          std::fabs(cp[2] - kCpTarget) <= kCpWindow;
  const bool monotone = std::fabs(bias[0]) >= std::fabs(bias[1]) &&
                        std::fabs(bias[1]) >= std::fabs(bias[2]) && rmse[0] > rmse[1] &&
                        rmse[1] > rmse[2];
  return {in_windows && monotone, detail};
}

// ---------------------------------------------------------------- 6 --
// Link selection by maximum log likelihood at 200 replications:
// true probit at n=100 is found at least 95% of the time, true logit
// at n=305 lands within 7 points of the 93.1% reference.
Outcome criterion6() {
  ScenarioConfig probit_cfg = study_config(100, 0.25, Link::probit, 200, 6061);
  const LinkChoiceReport probit_rep = link_choice_study(probit_cfg, 1);
  const double probit_ll = probit_rep.percent[0][1];

  ScenarioConfig logit_cfg = study_config(305, 0.25, Link::logit, 200, 6062);
  const LinkChoiceReport logit_rep = link_choice_study(logit_cfg, 1);
  const double logit_ll = logit_rep.percent[0][0];

  const std::string detail =
      fmt("LL picks true probit %.1f%% at n=100 (need >= 95), true logit %.1f%% at n=305 "
          "(target 93.1±7); used %d and %d",
          probit_ll, logit_ll, probit_rep.used, logit_rep.used);
  return {probit_ll >= 95.0 && std::fabs(logit_ll - 93.1) <= 7.0, detail};
}

// ---------------------------------------------------------------- 7 --
// Residual calibration: under the true model at n=500, a 5%-level
// normality test on the quantile residuals rejects in at most 10% of
// 200 replications.
Outcome criterion7() {
  ScenarioConfig cfg = study_config(500, 0.25, Link::logit, 200, 7071);
  const ModelSpec spec = scenario_spec(cfg);
  const Rng root(cfg.seed);
  int rejects = 0, used = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    Rng rng = root.split(static_cast<std::uint64_t>(rep));
    const Dataset data = simulate_dataset(cfg, rng);
    FitResult fr;
    try {
      fr = fit(spec, data);
    } catch (const std::exception&) {
      continue;
    }
    if (!fr.converged) continue;
    ++used;
    const ResidualReport rr = rq_residuals(fr, data);
    const double d = oracle::ks_statistic(rr.residuals, oracle::norm_cdf);
    if (oracle::ks_reject_5pct(d, rr.residuals.size())) ++rejects;
  }
  if (used < 190) return {false, fmt("only %d of 200 replications converged", used)};
  const double frac = 100.0 * rejects / used;
  return {frac <= 10.0,
          fmt("normality rejected in %d of %d replications (%.1f%%, limit 10%%)", rejects,
              used, frac)};
}

// ---------------------------------------------------------------- 8 --
// Covariate selection at n=1000: both zero-coefficient terms are
// eliminated before any signal term in at least 90 of 100 runs, and
// every trace's log likelihoods are non-increasing.  The gradient
// tolerance is widened to 1e-4: at this sample size the rounding floor
// of a finite-difference gradient (~sqrt(eps |ll| ||H||)) sits above
// the 1e-5 default, while a 1e-4 score still pins the coefficients to
// ~1e-7.
Outcome criterion8() {
  ScenarioConfig cfg = study_config(1000, 0.25, Link::logit, 100, 8081);
  cfg.theta = Eigen::Vector3d(-2.0, 1.5, 0.0);  // mu:t2 carries no signal
  cfg.nu = Eigen::Vector3d(1.0, -0.4, 0.0);     // alpha:t2 carries no signal
  const ModelSpec spec = scenario_spec(cfg);
  const Tolerance tol{1e-4, 1e-9, 500};
  const Rng root(cfg.seed);

  int clean = 0, mono_violations = 0, aborted = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    Rng rng = root.split(static_cast<std::uint64_t>(rep));
    const Dataset data = simulate_dataset(cfg, rng);
    const FitResult full = fit(spec, data, std::nullopt, tol);
    const EliminationTrace trace = backward_eliminate(spec, data, 0.05, tol);
    if (!trace.completed) {
      ++aborted;
      continue;
    }
    double prev = full.loglik;
    for (const EliminationStep& s : trace.steps) {
      if (s.loglik > prev + 1e-8) ++mono_violations;
      prev = s.loglik;
    }
    auto is_noise = [](const EliminationStep& s) {
      return s.term == "t2" && (s.component == "mu" || s.component == "alpha");
    };
    int noise_removed = 0;
    bool signal_before_noise = false;
    for (const EliminationStep& s : trace.steps) {
      if (is_noise(s))
        ++noise_removed;
      else if (noise_removed < 2)
        signal_before_noise = true;
    }
    if (noise_removed == 2 && !signal_before_noise) ++clean;
  }
  const std::string detail =
      fmt("noise eliminated first in %d of 100 runs (need >= 90), %d aborted, %d "
          "log-likelihood ordering violations",
          clean, aborted, mono_violations);
  return {clean >= 90 && mono_violations == 0, detail};
}

// ---------------------------------------------------------------- 9 --
// Structure recovery on synthetic data generated from the reference
// fitted coefficients: refit the full 12-term model and eliminate; the
// generating structure must come back in a majority of 50 replications.
Outcome criterion9() {
  // Covariate laws are a synthetic stand-in for the (undistributed)
  // source data; scales chosen so every generating coefficient is
  // detectable at this n.  The over-parameterized full model needs a
  // sample this large to keep its likelihood optimum interior: the
  // generating log-beta of 3.52 sits close to the family's gamma
  // limit, and small samples often push the spurious beta slopes
  // toward that degenerate ridge.
  const int reps = 50, n = 1000;
  const Rng root(9091);
  int recovered = 0, aborted = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng = root.split(static_cast<std::uint64_t>(rep));
    Eigen::MatrixXd cov(n, 3);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double ldens = 4.5 + 1.8 * rng.normal();
      const double posit = 0.15 + 0.20 * rng.normal();
      const double vaccine = 40.0 + 18.0 * rng.normal();
      cov(i, 0) = ldens;
      cov(i, 1) = posit;
      cov(i, 2) = vaccine;
      const double mu =
          link_inverse(Link::logit, -4.1285 + 0.0475 * ldens + 0.0185 * vaccine);
      const double alpha = std::exp(1.7041 + 0.3302 * ldens - 2.3832 * posit);
      const double beta = std::exp(3.5249);
      y[static_cast<std::size_t>(i)] =
          gb3_sample(QuantileGb3Params{mu, alpha, beta, 0.5}, rng);
    }
    const Dataset data(std::move(y), std::move(cov), {"ldens", "posit", "vaccine"});
    ModelSpec spec;
    spec.tau = 0.5;
    spec.mu_terms = {"ldens", "posit", "vaccine"};
    spec.alpha_terms = {"ldens", "posit", "vaccine"};
    spec.beta_terms = {"ldens", "posit", "vaccine"};
    // same widened gradient tolerance as the selection criterion: the
    // likelihood here is ~1e3, putting the finite-difference rounding
    // floor near the 1e-5 default
    const EliminationTrace trace = backward_eliminate(spec, data, 0.05, Tolerance{1e-4, 1e-9, 500});
    if (!trace.completed) {
      ++aborted;
      continue;
    }
    const bool ok = trace.final_spec.mu_terms == std::vector<std::string>{"ldens", "vaccine"} &&
                    trace.final_spec.alpha_terms == std::vector<std::string>{"ldens", "posit"} &&
                    trace.final_spec.beta_terms.empty();
    if (ok) ++recovered;
  }
  return {recovered > reps / 2,
          fmt("generating structure recovered in %d of %d replications (need > %d), %d aborted",
              recovered, reps, reps / 2, aborted)};
}

// --------------------------------------------------------------- 10 --
// Determinism: seeded commands through the installed binary produce
// byte-identical output across consecutive runs.
Outcome criterion10() {
  if (g_cli_path.empty()) return {false, "no --cli path given"};

  const fs::path dir = fs::temp_directory_path() / ("gb3reg_acc_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  auto run = [&](const std::string& args, const fs::path& out) {
    const std::string cmd =
        "\"" + g_cli_path + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  // a regression dataset and a scenario file for the fitting commands
  {
    Rng rng(1201);
    const int n = 80;
    Eigen::MatrixXd cov(n, 1);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      cov(i, 0) = rng.normal();
      const double mu = link_inverse(Link::logit, -0.7 + 0.6 * cov(i, 0));
      y[static_cast<std::size_t>(i)] = gb3_sample(QuantileGb3Params{mu, 2.0, 2.0, 0.5}, rng);
    }
    const Dataset data(std::move(y), std::move(cov), {"x"});
    std::ofstream os(dir / "data.csv", std::ios::binary);
    write_dataset_csv(data, "y", os);
  }
  {
    std::ofstream os(dir / "scenario.txt", std::ios::binary);
    os << "n = 100\ntau = 0.25\nlink = logit\nreplications = 3\nseed = 77\n"
          "theta = -1.0, 0.5, 0.0\nnu = 0.8, 0.0, 0.0\neta = 0.5, 0.0\n";
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"sample", "sample --n 200 --seed 42 --lambda 0.7 --alpha 1.3 --beta 2.2"},
      {"pdf-grid", "pdf-grid --params 2,1.5,0.8"},
      {"fit", "fit --data \"" + (dir / "data.csv").string() +
                  "\" --response y --mu-terms x --tau 0.25,0.5"},
      {"simulate-recovery",
       "simulate-recovery --scenario \"" + (dir / "scenario.txt").string() + "\" --workers 1"},
  };
  for (const auto& [name, args] : commands) {
    const fs::path o1 = dir / (name + ".1"), o2 = dir / (name + ".2");
    if (!run(args, o1) || !run(args, o2))
      return {false, fmt("command '%s' failed to run", name.c_str())};
    const std::string b1 = slurp(o1), b2 = slurp(o2);
    if (b1.empty() || b1 != b2)
      return {false, fmt("command '%s' is not byte-reproducible", name.c_str())};
  }
  return {true, fmt("%zu seeded commands byte-identical across repeated runs",
                    commands.size())};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli_path = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance --cli <path> [--only <k> ...]\n");
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "distribution identities", criterion1},
      {2, "special-function accuracy", criterion2},
      {3, "likelihood consistency", criterion3},
      {4, "derivative verification", criterion4},
      {5, "estimator recovery", criterion5},
      {6, "link selection", criterion6},
      {7, "residual calibration", criterion7},
      {8, "covariate selection", criterion8},
      {9, "structure recovery", criterion9},
      {10, "determinism", criterion10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d %-26s [%6.1fs] %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
