#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gb3reg/regression.hpp"

namespace gb3reg {

// Quantile residuals plus QQ-plot support vectors.  residuals is in
// data order; sample_quantiles is the same values sorted, paired with
// standard normal quantiles at plotting positions (i - 0.5) / n.
struct ResidualReport {
  std::vector<double> residuals;
  std::vector<double> theoretical_quantiles;
  std::vector<double> sample_quantiles;
  int n_clamped = 0;  // CDF values pushed back into [1e-10, 1 - 1e-10]
};

// r_i = normal_quantile(F(y_i; fitted mu_i, alpha_i, beta_i)).  The
// response is continuous, so no randomization is involved; under the
// true model the residuals are approximately standard normal.
// Requires a converged fit.
ResidualReport rq_residuals(const FitResult& fr, const Dataset& data);

struct InformationCriteria {
  double aic;
  double bic;
};

InformationCriteria information_criteria(double loglik, int n_params, int n_obs);
InformationCriteria information_criteria(const FitResult& fr);

// Errors of an estimated conditional-quantile vector against the truth:
// mean squared and mean absolute.
struct PredictionErrors {
  double mspe;
  double mape;
};

PredictionErrors prediction_errors(const Eigen::VectorXd& true_mu,
                                   const Eigen::VectorXd& est_mu);

// Exact percent change of the conditional quantile when covariate j of
// the quantile predictor moves by delta, evaluated at the design row
// `row` (leading 1 for the intercept):
//   100 * [g^{-1}(theta_j delta + x.theta) - g^{-1}(x.theta)] / g^{-1}(x.theta)
double pct_change_exact(const FitResult& fr, const Eigen::VectorXd& row, int j, double delta);

// First-order approximation 100 * (exp(-a1 theta_j) - 1) with a1 the
// taylor_slope of the quantile link; depends on the coefficient alone.
double pct_change_approx(double theta_j, Link g);

// Percent change in the mean of the latent numerator gamma component
// per unit covariate change: 100 * (exp(coef) - 1).
double latent_mean_change(double coef);

}  // namespace gb3reg
