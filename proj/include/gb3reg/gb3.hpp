#pragma once

#include <cstdint>
#include <unordered_map>

#include "gb3reg/specfun.hpp"

namespace gb3reg {

class Rng;

// Three-parameter beta on (0, 1): shape pair (alpha, beta) plus a skew
// parameter lambda > 0.  lambda = 1 recovers the ordinary beta; the
// complement 1 - Y follows the same family with (1/lambda, beta, alpha).
struct Gb3Params {
  double lambda;
  double alpha;
  double beta;
};

// Quantile-based parameterization: mu in (0, 1) is the tau-quantile of
// the distribution, and lambda is recovered from (mu, alpha, beta, tau).
struct QuantileGb3Params {
  double mu;
  double alpha;
  double beta;
  double tau;
};

// Throw std::domain_error unless all parameters are finite and positive
// (and, for the quantile form, mu and tau lie strictly inside (0, 1)).
void validate(const Gb3Params& p);
void validate(const QuantileGb3Params& p);

double gb3_logpdf(double y, const Gb3Params& p);
double gb3_pdf(double y, const Gb3Params& p);

// F(y) = I_{ lambda y / (1 + (lambda - 1) y) }(alpha, beta).
double gb3_cdf(double y, const Gb3Params& p);

// Inverse CDF: q = z / (lambda (1 - z) + z) with z the (alpha, beta)
// beta quantile of tau.
double gb3_quantile(double tau, const Gb3Params& p, const Tolerance& tol = Tolerance{1e-12, 1e-15, 200});

// Draw via the gamma-ratio representation: X1 ~ Gamma(alpha, 1),
// X2 ~ Gamma(beta, lambda) gives Y = X1 / (X1 + X2).
double gb3_sample(const Gb3Params& p, Rng& rng);

// Skew parameter that places the tau-quantile at mu:
// lambda = ((1 - mu) / mu) * z / (1 - z), z the beta(alpha, beta)
// quantile of tau.
double lambda_from_quantile(const QuantileGb3Params& p, const Tolerance& tol = Tolerance{1e-12, 1e-15, 200});

// Memo for beta quantiles keyed on the exact bit patterns of
// (alpha, beta, tau).  Regression likelihood evaluations hit the same
// shape pairs across finite-difference probes, so this turns most
// quantile inversions into table lookups.  Deterministic: the content
// never affects results, only speed.
class BetaQuantileCache {
 public:
  double get(double alpha, double beta, double tau, const Tolerance& tol);
  std::size_t size() const { return map_.size(); }
  void clear() { map_.clear(); }

 private:
  struct Key {
    std::uint64_t a, b, t;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  std::unordered_map<Key, double, KeyHash> map_;
};

// Quantile-parameterized wrappers.  The cache overloads are what the
// fitting loop uses; the plain ones invert the beta quantile on the fly.
double qgb3_logpdf(double y, const QuantileGb3Params& p);
double qgb3_pdf(double y, const QuantileGb3Params& p);
double qgb3_cdf(double y, const QuantileGb3Params& p);
double qgb3_quantile(double prob, const QuantileGb3Params& p);
double qgb3_logpdf(double y, const QuantileGb3Params& p, BetaQuantileCache& cache);
double qgb3_cdf(double y, const QuantileGb3Params& p, BetaQuantileCache& cache);
double gb3_sample(const QuantileGb3Params& p, Rng& rng);

// Generalized beta of the first kind on (0, 1) in its
// (mu, sigma, nu, tau) shape parameterization; kept as an independent
// cross-check of the GB3 density through the mapping
// GB3(lambda, alpha, beta) = GB1(alpha/(alpha+beta),
// (alpha+beta+1)^{-1/2}, 1/lambda, 1).
double gb1_pdf(double y, double mu, double sigma, double nu, double tau_power);

}  // namespace gb3reg
