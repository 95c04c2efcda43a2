#include "gb3reg/gb3.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "gb3reg/rng.hpp"

namespace gb3reg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void validate(const Gb3Params& p) {
  if (!positive_finite(p.lambda) || !positive_finite(p.alpha) || !positive_finite(p.beta))
    throw std::domain_error("gb3: lambda, alpha, beta must be finite and > 0");
}

void validate(const QuantileGb3Params& p) {
  if (!positive_finite(p.alpha) || !positive_finite(p.beta))
    throw std::domain_error("qgb3: alpha, beta must be finite and > 0");
  if (!(p.mu > 0.0 && p.mu < 1.0))
    throw std::domain_error("qgb3: mu must lie in (0, 1)");
  if (!(p.tau > 0.0 && p.tau < 1.0))
    throw std::domain_error("qgb3: tau must lie in (0, 1)");
}

double gb3_logpdf(double y, const Gb3Params& p) {
  validate(p);
  if (!(y > 0.0 && y < 1.0)) return kNegInf;
  // log f = alpha log lambda + (alpha-1) log y + (beta-1) log(1-y)
  //         - log B(alpha, beta) - (alpha+beta) log(1 - (1-lambda) y).
  // The last factor is computed as (1-y) + lambda*y: both terms are
  // positive, so no cancellation for lambda near one.
  const double denom = (1.0 - y) + p.lambda * y;
  return p.alpha * std::log(p.lambda) + (p.alpha - 1.0) * std::log(y) +
         (p.beta - 1.0) * std::log1p(-y) - log_beta(p.alpha, p.beta) -
         (p.alpha + p.beta) * std::log(denom);
}

double gb3_pdf(double y, const Gb3Params& p) { return std::exp(gb3_logpdf(y, p)); }

double gb3_cdf(double y, const Gb3Params& p) {
  validate(p);
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double x = p.lambda * y / ((1.0 - y) + p.lambda * y);
  return inc_beta_ratio(x, p.alpha, p.beta);
}

double gb3_quantile(double tau, const Gb3Params& p, const Tolerance& tol) {
  validate(p);
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::domain_error("gb3_quantile: tau must lie in [0, 1]");
  if (tau == 0.0) return 0.0;
  if (tau == 1.0) return 1.0;
  const double z = inv_inc_beta(tau, p.alpha, p.beta, tol);
  return z / (p.lambda * (1.0 - z) + z);
}

double gb3_sample(const Gb3Params& p, Rng& rng) {
  validate(p);
  const double x1 = sample_gamma(p.alpha, 1.0, rng);
  const double x2 = sample_gamma(p.beta, p.lambda, rng);
  return x1 / (x1 + x2);
}

double lambda_from_quantile(const QuantileGb3Params& p, const Tolerance& tol) {
  validate(p);
  const double z = inv_inc_beta(p.tau, p.alpha, p.beta, tol);
  return (1.0 - p.mu) / p.mu * z / (1.0 - z);
}

std::size_t BetaQuantileCache::KeyHash::operator()(const Key& k) const {
  // fnv1a over the three bit patterns
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t w : {k.a, k.b, k.t}) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

double BetaQuantileCache::get(double alpha, double beta, double tau, const Tolerance& tol) {
  const Key key{std::bit_cast<std::uint64_t>(alpha), std::bit_cast<std::uint64_t>(beta),
                std::bit_cast<std::uint64_t>(tau)};
  auto it = map_.find(key);
  if (it != map_.end()) return it->second;
  // Bound the footprint; a fit touches a few thousand shape pairs, so
  // hitting this at all means the cache is being reused across many
  // fits and a reset costs little.
  if (map_.size() >= 1u << 20) map_.clear();
  const double z = inv_inc_beta(tau, alpha, beta, tol);
  map_.emplace(key, z);
  return z;
}

namespace {

const Tolerance kQuantileTol{1e-12, 1e-15, 200};

double qgb3_logpdf_from_z(double y, const QuantileGb3Params& p, double z) {
  if (!(y > 0.0 && y < 1.0)) return kNegInf;
  // Same density as gb3_logpdf with lambda = ((1-mu)/mu) * zeta,
  // zeta = z/(1-z), expanded so that log(lambda) is assembled from
  // logs of the pieces and cannot overflow prematurely.
  const double log_zeta = std::log(z) - std::log1p(-z);
  const double log_lambda = std::log1p(-p.mu) - std::log(p.mu) + log_zeta;
  const double lambda = std::exp(log_lambda);
  const double denom = (1.0 - y) + lambda * y;
  if (!(denom > 0.0) || !std::isfinite(denom)) return kNegInf;
  return p.alpha * log_lambda + (p.alpha - 1.0) * std::log(y) +
         (p.beta - 1.0) * std::log1p(-y) - log_beta(p.alpha, p.beta) -
         (p.alpha + p.beta) * std::log(denom);
}

}  // namespace

double qgb3_logpdf(double y, const QuantileGb3Params& p) {
  validate(p);
  return qgb3_logpdf_from_z(y, p, inv_inc_beta(p.tau, p.alpha, p.beta, kQuantileTol));
}

double qgb3_logpdf(double y, const QuantileGb3Params& p, BetaQuantileCache& cache) {
  validate(p);
  return qgb3_logpdf_from_z(y, p, cache.get(p.alpha, p.beta, p.tau, kQuantileTol));
}

double qgb3_pdf(double y, const QuantileGb3Params& p) { return std::exp(qgb3_logpdf(y, p)); }

double qgb3_cdf(double y, const QuantileGb3Params& p) {
  const double lambda = lambda_from_quantile(p, kQuantileTol);
  return gb3_cdf(y, Gb3Params{lambda, p.alpha, p.beta});
}

double qgb3_cdf(double y, const QuantileGb3Params& p, BetaQuantileCache& cache) {
  validate(p);
  const double z = cache.get(p.alpha, p.beta, p.tau, kQuantileTol);
  const double lambda = (1.0 - p.mu) / p.mu * z / (1.0 - z);
  return gb3_cdf(y, Gb3Params{lambda, p.alpha, p.beta});
}

double qgb3_quantile(double prob, const QuantileGb3Params& p) {
  const double lambda = lambda_from_quantile(p, kQuantileTol);
  return gb3_quantile(prob, Gb3Params{lambda, p.alpha, p.beta}, kQuantileTol);
}

double gb3_sample(const QuantileGb3Params& p, Rng& rng) {
  const double lambda = lambda_from_quantile(p, kQuantileTol);
  return gb3_sample(Gb3Params{lambda, p.alpha, p.beta}, rng);
}

double gb1_pdf(double y, double mu, double sigma, double nu, double tau_power) {
  if (!(mu > 0.0 && mu < 1.0) || !positive_finite(sigma) || !positive_finite(nu) ||
      !positive_finite(tau_power))
    throw std::domain_error("gb1_pdf: invalid parameters");
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  const double s2 = sigma * sigma;
  if (!(s2 < 1.0)) throw std::domain_error("gb1_pdf: requires sigma in (0, 1)");
  const double a = mu * (1.0 - s2) / s2;
  const double b = (1.0 - mu) * (1.0 - s2) / s2;
  const double yt = std::pow(y, tau_power);
  const double log_f = std::log(tau_power) + b * std::log(nu) +
                       (tau_power * a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-yt) -
                       log_beta(a, b) - (a + b) * std::log(nu + (1.0 - nu) * yt);
  return std::exp(log_f);
}

}  // namespace gb3reg
