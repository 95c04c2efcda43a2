#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gb3reg/links.hpp"
#include "gb3reg/specfun.hpp"

namespace gb3reg {

// Rectangular data: response on (0, 1) plus named covariate columns.
// Construction validates shapes, finiteness, and the open-interval
// response constraint, reporting the first offending row.
class Dataset {
 public:
  Dataset(std::vector<double> y, Eigen::MatrixXd covariates,
          std::vector<std::string> names);

  int n() const { return static_cast<int>(y_.size()); }
  const std::vector<double>& y() const { return y_; }
  const Eigen::MatrixXd& covariates() const { return covariates_; }
  const std::vector<std::string>& names() const { return names_; }

  // Index of a named column; throws std::out_of_range naming the column.
  int column(const std::string& name) const;

 private:
  std::vector<double> y_;
  Eigen::MatrixXd covariates_;
  std::vector<std::string> names_;
};

// Which covariates enter each of the three predictors.  Every predictor
// carries an implicit intercept; terms name Dataset columns.  mu_link
// applies to the quantile predictor, the two shape predictors always
// use the log link.
struct ModelSpec {
  double tau = 0.5;
  Link mu_link = Link::logit;
  std::vector<std::string> mu_terms;
  std::vector<std::string> alpha_terms;
  std::vector<std::string> beta_terms;
};

// Coefficient blocks in predictor order; each block is intercept-first,
// then spec terms in order.
struct Coefficients {
  Eigen::VectorXd theta;  // quantile predictor
  Eigen::VectorXd nu;     // log alpha predictor
  Eigen::VectorXd eta;    // log beta predictor
};

struct Predictors {
  Eigen::VectorXd mu;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

struct FitResult {
  ModelSpec spec;
  Coefficients coef;
  Coefficients se;                 // NaN-filled when has_std_errors is false
  Eigen::MatrixXd covariance;      // packed order theta | nu | eta
  std::vector<std::string> names;  // packed parameter names, "mu:intercept", ...
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double grad_norm = 0.0;  // sup norm of the score at the returned estimate
  int iterations = 0;
  int n_obs = 0;
  int n_params = 0;
  bool converged = false;
  bool has_std_errors = false;
};

struct WaldRow {
  std::string name;
  double estimate;
  double se;
  double z;
  double p_value;
  double ci_low;
  double ci_high;
};

// Default stopping rule for fit(): sup-norm of the numerical score
// below abs_tol and relative objective change below rel_tol.
inline Tolerance fit_tolerance() { return Tolerance{1e-5, 1e-9, 500}; }

// Per-observation predictor values implied by the coefficients.
Predictors predictors(const ModelSpec& spec, const Dataset& data, const Coefficients& c);

// Sum of per-observation log densities; -inf when the coefficients map
// to an infeasible parameter point anywhere in the sample.  Shape
// values above 1e8 count as infeasible: past that the density is
// numerically unreliable and the likelihood only flattens toward an
// asymptote.
double log_likelihood(const ModelSpec& spec, const Dataset& data, const Coefficients& c);

// Central finite-difference gradient of the log likelihood in packed
// order, step cbrt(machine eps) scaled by coefficient magnitude.
Eigen::VectorXd score(const ModelSpec& spec, const Dataset& data, const Coefficients& c);

// Negative finite-difference Hessian of the log likelihood (observed
// information), symmetrized.  Steps are eps^{1/4} scaled.
Eigen::MatrixXd observed_information(const ModelSpec& spec, const Dataset& data,
                                     const Coefficients& c);

// Maximum likelihood via BFGS with backtracking line search.  `init`
// warm-starts the optimizer; otherwise theta starts at the least
// squares solution of the linked response and the shape blocks start
// at zero.  Infeasible points are handled by rejection, so no
// constraint machinery is needed.
FitResult fit(const ModelSpec& spec, const Dataset& data,
              const std::optional<Coefficients>& init = std::nullopt,
              const Tolerance& tol = fit_tolerance());

// Wald z tests and confidence intervals at the given level from the
// inverse observed information.  Throws std::runtime_error if the fit
// carries no standard errors.
std::vector<WaldRow> wald_inference(const FitResult& fit, double level = 0.95);

// Packed parameter names for a spec: mu block, alpha block, beta block.
std::vector<std::string> parameter_names(const ModelSpec& spec);

}  // namespace gb3reg
