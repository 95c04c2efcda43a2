#include "gb3reg/simulation.hpp"

#include <cmath>
#include <optional>

#include "gb3reg/diagnostics.hpp"
#include "gb3reg/gb3.hpp"
#include "gb3reg/parallel.hpp"

namespace gb3reg {

void validate(const ScenarioConfig& cfg) {
  if (cfg.theta.size() != 3 || cfg.nu.size() != 3 || cfg.eta.size() != 2)
    throw std::invalid_argument(
        "ScenarioConfig: theta and nu must have length 3 and eta length 2");
  if (cfg.replications < 1)
    throw std::invalid_argument("ScenarioConfig: replications must be at least 1");
  if (cfg.n <= 8) throw std::invalid_argument("ScenarioConfig: n must exceed the parameter count");
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0))
    throw std::invalid_argument("ScenarioConfig: tau must lie in (0, 1)");
}

ModelSpec scenario_spec(const ScenarioConfig& cfg) {
  ModelSpec spec;
  spec.tau = cfg.tau;
  spec.mu_link = cfg.true_link;
  spec.mu_terms = {"t1", "t2"};
  spec.alpha_terms = {"t1", "t2"};
  spec.beta_terms = {"t3"};
  return spec;
}

Dataset simulate_dataset(const ScenarioConfig& cfg, Rng& rng) {
  validate(cfg);
  const int n = cfg.n;
  Eigen::MatrixXd cov(n, 3);
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t1 = rng.normal();
    const double t2 = rng.normal();
    const double t3 = rng.normal();
    cov(i, 0) = t1;
    cov(i, 1) = t2;
    cov(i, 2) = t3;
    const double mu =
        link_inverse(cfg.true_link, cfg.theta[0] + cfg.theta[1] * t1 + cfg.theta[2] * t2);
    const double alpha = std::exp(cfg.nu[0] + cfg.nu[1] * t1 + cfg.nu[2] * t2);
    const double beta = std::exp(cfg.eta[0] + cfg.eta[1] * t3);
    y[static_cast<std::size_t>(i)] =
        gb3_sample(QuantileGb3Params{mu, alpha, beta, cfg.tau}, rng);
  }
  return Dataset(std::move(y), std::move(cov), {"t1", "t2", "t3"});
}

Eigen::VectorXd true_mu(const ScenarioConfig& cfg, const Dataset& data) {
  validate(cfg);
  const int n = data.n();
  const Eigen::MatrixXd& cov = data.covariates();
  const int c1 = data.column("t1");
  const int c2 = data.column("t2");
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i)
    mu[i] = link_inverse(cfg.true_link,
                         cfg.theta[0] + cfg.theta[1] * cov(i, c1) + cfg.theta[2] * cov(i, c2));
  return mu;
}

RecoveryReport recovery_study(const ScenarioConfig& cfg, unsigned workers) {
  validate(cfg);
  const ModelSpec spec = scenario_spec(cfg);
  const int p = 8;  // 3 + 3 + 2
  const Rng root(cfg.seed);

  struct RepResult {
    bool ok = false;
    Eigen::VectorXd est;
    Eigen::VectorXd se;
  };
  std::vector<RepResult> results(static_cast<std::size_t>(cfg.replications));

  parallel_for(static_cast<std::size_t>(cfg.replications), workers, [&](std::size_t rep) {
    Rng rng = root.split(rep);
    const Dataset data = simulate_dataset(cfg, rng);
    FitResult fr;
    try {
      fr = fit(spec, data);
    } catch (const std::exception&) {
      return;  // dropped
    }
    if (!fr.converged || !fr.has_std_errors) return;
    RepResult& out = results[rep];
    out.est.resize(p);
    out.est << fr.coef.theta, fr.coef.nu, fr.coef.eta;
    out.se.resize(p);
    out.se << fr.se.theta, fr.se.nu, fr.se.eta;
    out.ok = out.est.allFinite() && out.se.allFinite();
  });

  Eigen::VectorXd truth(p);
  truth << cfg.theta, cfg.nu, cfg.eta;

  RecoveryReport report;
  report.names = parameter_names(spec);
  report.truth = truth;
  report.replications = cfg.replications;
  const double z975 = normal_quantile(0.975);

  Eigen::VectorXd sum_est = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd sum_se = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd sum_sq_err = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd covered = Eigen::VectorXd::Zero(p);
  for (const RepResult& r : results) {
    if (!r.ok) {
      ++report.dropped;
      continue;
    }
    ++report.used;
    sum_est += r.est;
    sum_se += r.se;
    sum_sq_err += (r.est - truth).cwiseAbs2();
    for (int j = 0; j < p; ++j)
      if (std::fabs(r.est[j] - truth[j]) <= z975 * r.se[j]) covered[j] += 1.0;
  }
  if (report.used == 0)
    throw ConvergenceError("recovery_study: no replication converged");
  const double m = static_cast<double>(report.used);
  report.bias = sum_est / m - truth;
  report.mean_se = sum_se / m;
  report.rmse = (sum_sq_err / m).cwiseSqrt();
  report.cp95 = covered / m;
  return report;
}

LinkChoiceReport link_choice_study(const ScenarioConfig& cfg, unsigned workers) {
  validate(cfg);
  const Rng root(cfg.seed);
  constexpr auto& links = LinkChoiceReport::kLinks;

  struct RepResult {
    bool ok = false;
    int winner[3] = {-1, -1, -1};  // LL, MSPE, MAPE
  };
  std::vector<RepResult> results(static_cast<std::size_t>(cfg.replications));

  parallel_for(static_cast<std::size_t>(cfg.replications), workers, [&](std::size_t rep) {
    Rng rng = root.split(rep);
    const Dataset data = simulate_dataset(cfg, rng);
    const Eigen::VectorXd mu_true = true_mu(cfg, data);

    double ll[4], mspe[4], mape[4];
    for (std::size_t k = 0; k < links.size(); ++k) {
      ModelSpec spec = scenario_spec(cfg);
      spec.mu_link = links[k];
      FitResult fr;
      try {
        fr = fit(spec, data);
      } catch (const std::exception&) {
        return;
      }
      if (!fr.converged) return;  // all four fits must stand
      ll[k] = fr.loglik;
      const Predictors pred = predictors(spec, data, fr.coef);
      const PredictionErrors pe = prediction_errors(mu_true, pred.mu);
      mspe[k] = pe.mspe;
      mape[k] = pe.mape;
    }
    RepResult& out = results[rep];
    auto argbest = [](const double* v, bool maximize) {
      int best = 0;
      for (int k = 1; k < 4; ++k)
        if (maximize ? v[k] > v[best] : v[k] < v[best]) best = k;
      return best;
    };
    out.winner[0] = argbest(ll, true);
    out.winner[1] = argbest(mspe, false);
    out.winner[2] = argbest(mape, false);
    out.ok = true;
  });

  LinkChoiceReport report;
  report.replications = cfg.replications;
  int counts[3][4] = {};
  for (const RepResult& r : results) {
    if (!r.ok) {
      ++report.dropped;
      continue;
    }
    ++report.used;
    for (int c = 0; c < 3; ++c) ++counts[c][r.winner[c]];
  }
  if (report.used == 0)
    throw ConvergenceError("link_choice_study: no replication converged");
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 4; ++k)
      report.percent[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] =
          100.0 * counts[c][k] / report.used;
  return report;
}

}  // namespace gb3reg
