#include "gb3reg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "gb3reg/gb3.hpp"

namespace gb3reg {

ResidualReport rq_residuals(const FitResult& fr, const Dataset& data) {
  if (!fr.converged)
    throw std::invalid_argument("rq_residuals: fit did not converge");
  const Predictors p = predictors(fr.spec, data, fr.coef);
  const int n = data.n();
  ResidualReport rep;
  rep.residuals.resize(n);
  for (int i = 0; i < n; ++i) {
    const QuantileGb3Params q{p.mu[i], p.alpha[i], p.beta[i], fr.spec.tau};
    double u = qgb3_cdf(data.y()[i], q);
    if (u < 1e-10) {
      u = 1e-10;
      ++rep.n_clamped;
    } else if (u > 1.0 - 1e-10) {
      u = 1.0 - 1e-10;
      ++rep.n_clamped;
    }
    rep.residuals[i] = normal_quantile(u);
  }
  rep.sample_quantiles = rep.residuals;
  std::sort(rep.sample_quantiles.begin(), rep.sample_quantiles.end());
  rep.theoretical_quantiles.resize(n);
  for (int i = 0; i < n; ++i)
    rep.theoretical_quantiles[i] = normal_quantile((i + 0.5) / n);
  return rep;
}

InformationCriteria information_criteria(double loglik, int n_params, int n_obs) {
  if (n_params < 1 || n_obs < 1)
    throw std::domain_error("information_criteria: n_params and n_obs must be positive");
  return {-2.0 * loglik + 2.0 * n_params,
          -2.0 * loglik + n_params * std::log(static_cast<double>(n_obs))};
}

InformationCriteria information_criteria(const FitResult& fr) {
  return information_criteria(fr.loglik, fr.n_params, fr.n_obs);
}

PredictionErrors prediction_errors(const Eigen::VectorXd& true_mu,
                                   const Eigen::VectorXd& est_mu) {
  if (true_mu.size() != est_mu.size() || true_mu.size() == 0)
    throw std::invalid_argument("prediction_errors: vectors must have equal positive length");
  const Eigen::ArrayXd diff = (true_mu - est_mu).array();
  return {diff.square().mean(), diff.abs().mean()};
}

double pct_change_exact(const FitResult& fr, const Eigen::VectorXd& row, int j, double delta) {
  if (row.size() != fr.coef.theta.size())
    throw std::invalid_argument(
        "pct_change_exact: row length must match the quantile coefficient block");
  if (j < 0 || j >= fr.coef.theta.size())
    throw std::out_of_range("pct_change_exact: coefficient index out of range");
  const double base_eta = row.dot(fr.coef.theta);
  const double base = link_inverse(fr.spec.mu_link, base_eta);
  const double moved = link_inverse(fr.spec.mu_link, base_eta + fr.coef.theta[j] * delta);
  return 100.0 * (moved - base) / base;
}

double pct_change_approx(double theta_j, Link g) {
  return 100.0 * (std::exp(-taylor_slope(g) * theta_j) - 1.0);
}

double latent_mean_change(double coef) { return 100.0 * (std::exp(coef) - 1.0); }

}  // namespace gb3reg
