#include "gb3reg/regression.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "gb3reg/gb3.hpp"

namespace gb3reg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Finite-difference steps: cbrt(eps) for first derivatives, eps^{1/4}
// for second, each scaled by coefficient magnitude.
const double kGradStep = std::cbrt(std::numeric_limits<double>::epsilon());
const double kHessStep = std::pow(std::numeric_limits<double>::epsilon(), 0.25);

// Beta quantile accuracy inside likelihood evaluations.  Much tighter
// than the outer fit tolerance: inner-solver error would otherwise leak
// into finite-difference derivatives as noise.
const Tolerance kShapeTol{1e-12, 1e-15, 200};

// Feasibility ceiling for the shape parameters.  Beyond this the
// density is evaluated through differences of lgamma values ~ beta
// log(beta), whose rounding makes the likelihood noisy at the unit
// level -- finite-difference gradients there are meaningless, and the
// likelihood only flattens toward an asymptote anyway.  Rejecting the
// region keeps the line search from ratcheting into it on noise.
constexpr double kShapeMax = 1e8;

Eigen::MatrixXd build_design(const Dataset& data, const std::vector<std::string>& terms,
                             const char* component) {
  const int n = data.n();
  Eigen::MatrixXd x(n, 1 + static_cast<int>(terms.size()));
  x.col(0).setOnes();
  for (std::size_t j = 0; j < terms.size(); ++j)
    x.col(1 + static_cast<int>(j)) = data.covariates().col(data.column(terms[j]));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < x.cols())
    throw std::invalid_argument(std::string(component) +
                                " design matrix is rank deficient (check for duplicate or "
                                "collinear terms)");
  return x;
}

// Log likelihood as a function of the packed coefficient vector, with
// the design matrices, response logs, and beta-quantile solutions
// cached across evaluations.  Infeasible points evaluate to -inf
// rather than raising, which is what lets the optimizer treat the
// constrained problem as unconstrained.
class Objective {
 public:
  Objective(const ModelSpec& spec, const Dataset& data)
      : tau_(spec.tau),
        mu_link_(spec.mu_link),
        y_(data.y()),
        x_mu_(build_design(data, spec.mu_terms, "mu")),
        x_alpha_(build_design(data, spec.alpha_terms, "alpha")),
        x_beta_(build_design(data, spec.beta_terms, "beta")) {
    if (!(spec.tau > 0.0 && spec.tau < 1.0))
      throw std::domain_error("ModelSpec: tau must lie in (0, 1)");
    const int n = static_cast<int>(y_.size());
    log_y_.resize(n);
    log1m_y_.resize(n);
    for (int i = 0; i < n; ++i) {
      log_y_[i] = std::log(y_[i]);
      log1m_y_[i] = std::log1p(-y_[i]);
    }
  }

  int k_mu() const { return static_cast<int>(x_mu_.cols()); }
  int k_alpha() const { return static_cast<int>(x_alpha_.cols()); }
  int k_beta() const { return static_cast<int>(x_beta_.cols()); }
  int dim() const { return k_mu() + k_alpha() + k_beta(); }

  Eigen::VectorXd pack(const Coefficients& c) const {
    if (c.theta.size() != k_mu() || c.nu.size() != k_alpha() || c.eta.size() != k_beta())
      throw std::invalid_argument("coefficient block lengths do not match the model spec");
    Eigen::VectorXd v(dim());
    v << c.theta, c.nu, c.eta;
    return v;
  }

  Coefficients unpack(const Eigen::VectorXd& v) const {
    Coefficients c;
    c.theta = v.segment(0, k_mu());
    c.nu = v.segment(k_mu(), k_alpha());
    c.eta = v.segment(k_mu() + k_alpha(), k_beta());
    return c;
  }

  double loglik(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(y_.size());
    const Eigen::VectorXd eta1 = x_mu_ * v.segment(0, k_mu());
    const Eigen::VectorXd eta2 = x_alpha_ * v.segment(k_mu(), k_alpha());
    const Eigen::VectorXd eta3 = x_beta_ * v.segment(k_mu() + k_alpha(), k_beta());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mu = link_inverse(mu_link_, eta1[i]);
      const double alpha = std::exp(eta2[i]);
      const double beta = std::exp(eta3[i]);
      if (!(alpha > 0.0) || !(alpha <= kShapeMax) || !(beta > 0.0) || !(beta <= kShapeMax))
        return -kInf;
      const Shape s = shape(alpha, beta);
      if (!std::isfinite(s.z)) return -kInf;
      const double log_zeta = std::log(s.z) - std::log1p(-s.z);
      const double log_lambda = std::log1p(-mu) - std::log(mu) + log_zeta;
      const double lambda = std::exp(log_lambda);
      const double denom = (1.0 - y_[i]) + lambda * y_[i];
      if (!(denom > 0.0) || !std::isfinite(denom)) return -kInf;
      total += alpha * log_lambda + (alpha - 1.0) * log_y_[i] +
               (beta - 1.0) * log1m_y_[i] - s.log_b -
               (alpha + beta) * std::log(denom);
    }
    return std::isfinite(total) ? total : -kInf;
  }

  // Central-difference gradient of the log likelihood; falls back to a
  // one-sided difference against f0 when a stencil point is infeasible.
  Eigen::VectorXd grad_central(const Eigen::VectorXd& v, double f0) {
    const int p = dim();
    Eigen::VectorXd g(p);
    Eigen::VectorXd w = v;
    for (int j = 0; j < p; ++j) {
      const double h = kGradStep * std::max(1.0, std::fabs(v[j]));
      w[j] = v[j] + h;
      const double fp = loglik(w);
      w[j] = v[j] - h;
      const double fm = loglik(w);
      w[j] = v[j];
      if (std::isfinite(fp) && std::isfinite(fm))
        g[j] = (fp - fm) / (2.0 * h);
      else if (std::isfinite(fp))
        g[j] = (fp - f0) / h;
      else if (std::isfinite(fm))
        g[j] = (f0 - fm) / h;
      else
        throw ConvergenceError("score: log likelihood not finite near evaluation point");
    }
    return g;
  }

  // Cheaper forward-difference gradient for early optimizer iterations.
  Eigen::VectorXd grad_forward(const Eigen::VectorXd& v, double f0) {
    const int p = dim();
    const double step = std::sqrt(std::numeric_limits<double>::epsilon());
    Eigen::VectorXd g(p);
    Eigen::VectorXd w = v;
    for (int j = 0; j < p; ++j) {
      const double h = step * std::max(1.0, std::fabs(v[j]));
      w[j] = v[j] + h;
      const double fp = loglik(w);
      w[j] = v[j];
      if (std::isfinite(fp)) {
        g[j] = (fp - f0) / h;
      } else {
        w[j] = v[j] - h;
        const double fm = loglik(w);
        w[j] = v[j];
        if (!std::isfinite(fm))
          throw ConvergenceError("score: log likelihood not finite near evaluation point");
        g[j] = (f0 - fm) / h;
      }
    }
    return g;
  }

  // Central second differences of the log likelihood.  Non-finite
  // stencil values propagate as NaN entries; callers decide whether
  // that is fatal.
  Eigen::MatrixXd hessian(const Eigen::VectorXd& v) {
    const int p = dim();
    const double f0 = loglik(v);
    Eigen::VectorXd h(p);
    for (int j = 0; j < p; ++j) h[j] = kHessStep * std::max(1.0, std::fabs(v[j]));
    Eigen::MatrixXd He(p, p);
    Eigen::VectorXd w = v;
    for (int j = 0; j < p; ++j) {
      w[j] = v[j] + h[j];
      const double fp = loglik(w);
      w[j] = v[j] - h[j];
      const double fm = loglik(w);
      w[j] = v[j];
      const double num = (fp - 2.0 * f0 + fm);
      He(j, j) = (std::isfinite(fp) && std::isfinite(fm)) ? num / (h[j] * h[j]) : kNaN;
    }
    for (int j = 0; j < p; ++j) {
      for (int k = j + 1; k < p; ++k) {
        w[j] = v[j] + h[j];
        w[k] = v[k] + h[k];
        const double fpp = loglik(w);
        w[k] = v[k] - h[k];
        const double fpm = loglik(w);
        w[j] = v[j] - h[j];
        const double fmm = loglik(w);
        w[k] = v[k] + h[k];
        const double fmp = loglik(w);
        w[j] = v[j];
        w[k] = v[k];
        double val = kNaN;
        if (std::isfinite(fpp) && std::isfinite(fpm) && std::isfinite(fmp) &&
            std::isfinite(fmm))
          val = (fpp - fpm - fmp + fmm) / (4.0 * h[j] * h[k]);
        He(j, k) = val;
        He(k, j) = val;
      }
    }
    return He;
  }

 private:
  struct Shape {
    double z;
    double log_b;
  };
  struct ShapeKey {
    std::uint64_t a, b;
    bool operator==(const ShapeKey&) const = default;
  };
  struct ShapeKeyHash {
    std::size_t operator()(const ShapeKey& k) const {
      std::uint64_t h = 1469598103934665603ULL;
      for (std::uint64_t w : {k.a, k.b}) {
        h ^= w;
        h *= 1099511628211ULL;
        h ^= h >> 29;
      }
      return static_cast<std::size_t>(h);
    }
  };

  Shape shape(double alpha, double beta) {
    const ShapeKey key{std::bit_cast<std::uint64_t>(alpha), std::bit_cast<std::uint64_t>(beta)};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= (1u << 22)) cache_.clear();
    Shape s{kNaN, kNaN};
    try {
      s.z = inv_inc_beta(tau_, alpha, beta, kShapeTol);
      s.log_b = log_beta(alpha, beta);
    } catch (const ConvergenceError&) {
      // infeasible marker stays cached so repeated probes stay cheap
    }
    cache_.emplace(key, s);
    return s;
  }

  double tau_;
  Link mu_link_;
  std::vector<double> y_;
  Eigen::MatrixXd x_mu_, x_alpha_, x_beta_;
  std::vector<double> log_y_, log1m_y_;
  std::unordered_map<ShapeKey, Shape, ShapeKeyHash> cache_;
};

Coefficients default_init(Objective& obj, const ModelSpec& spec, const Dataset& data) {
  const int n = data.n();
  Eigen::VectorXd linked(n);
  for (int i = 0; i < n; ++i) {
    const double yc = std::clamp(data.y()[i], 1e-4, 1.0 - 1e-4);
    linked[i] = link_apply(spec.mu_link, yc);
  }
  Eigen::MatrixXd x(n, obj.k_mu());
  x.col(0).setOnes();
  for (std::size_t j = 0; j < spec.mu_terms.size(); ++j)
    x.col(1 + static_cast<int>(j)) = data.covariates().col(data.column(spec.mu_terms[j]));
  Coefficients c;
  c.theta = x.colPivHouseholderQr().solve(linked);
  c.nu = Eigen::VectorXd::Zero(obj.k_alpha());
  c.eta = Eigen::VectorXd::Zero(obj.k_beta());
  // Profile the two shape intercepts over a coarse grid.  Starting the
  // shapes at log 1 = 0 puts overparameterized models on paths that can
  // wander toward the degenerate large-shape ridge, where the search
  // stalls; a start near the interior basin avoids that.
  double best = -kInf;
  double best_nu0 = 0.0, best_eta0 = 0.0;
  for (double nu0 = 0.0; nu0 <= 4.0; nu0 += 1.0)
    for (double eta0 = 0.0; eta0 <= 4.0; eta0 += 1.0) {
      c.nu[0] = nu0;
      c.eta[0] = eta0;
      const double ll = obj.loglik(obj.pack(c));
      if (ll > best) {
        best = ll;
        best_nu0 = nu0;
        best_eta0 = eta0;
      }
    }
  c.nu[0] = best_nu0;
  c.eta[0] = best_eta0;
  return c;
}

}  // namespace

Dataset::Dataset(std::vector<double> y, Eigen::MatrixXd covariates,
                 std::vector<std::string> names)
    : y_(std::move(y)), covariates_(std::move(covariates)), names_(std::move(names)) {
  if (static_cast<int>(y_.size()) != covariates_.rows())
    throw std::invalid_argument("Dataset: response length does not match covariate rows");
  if (static_cast<int>(names_.size()) != covariates_.cols())
    throw std::invalid_argument("Dataset: column name count does not match covariate columns");
  if (y_.empty()) throw std::invalid_argument("Dataset: empty response");
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (!std::isfinite(y_[i]) || !(y_[i] > 0.0 && y_[i] < 1.0))
      throw std::invalid_argument("Dataset: response at row " + std::to_string(i) +
                                  " is not inside (0, 1)");
  }
  if (!covariates_.allFinite())
    throw std::invalid_argument("Dataset: covariates contain non-finite values");
}

int Dataset::column(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return static_cast<int>(j);
  throw std::out_of_range("Dataset: no column named '" + name + "'");
}

std::vector<std::string> parameter_names(const ModelSpec& spec) {
  std::vector<std::string> out;
  out.push_back("mu:intercept");
  for (const auto& t : spec.mu_terms) out.push_back("mu:" + t);
  out.push_back("alpha:intercept");
  for (const auto& t : spec.alpha_terms) out.push_back("alpha:" + t);
  out.push_back("beta:intercept");
  for (const auto& t : spec.beta_terms) out.push_back("beta:" + t);
  return out;
}

Predictors predictors(const ModelSpec& spec, const Dataset& data, const Coefficients& c) {
  const int n = data.n();
  const Eigen::MatrixXd x_mu = build_design(data, spec.mu_terms, "mu");
  const Eigen::MatrixXd x_alpha = build_design(data, spec.alpha_terms, "alpha");
  const Eigen::MatrixXd x_beta = build_design(data, spec.beta_terms, "beta");
  if (c.theta.size() != x_mu.cols() || c.nu.size() != x_alpha.cols() ||
      c.eta.size() != x_beta.cols())
    throw std::invalid_argument("coefficient block lengths do not match the model spec");
  Predictors p{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const Eigen::VectorXd eta1 = x_mu * c.theta;
  const Eigen::VectorXd eta2 = x_alpha * c.nu;
  const Eigen::VectorXd eta3 = x_beta * c.eta;
  for (int i = 0; i < n; ++i) {
    p.mu[i] = link_inverse(spec.mu_link, eta1[i]);
    p.alpha[i] = std::exp(eta2[i]);
    p.beta[i] = std::exp(eta3[i]);
  }
  return p;
}

double log_likelihood(const ModelSpec& spec, const Dataset& data, const Coefficients& c) {
  Objective obj(spec, data);
  return obj.loglik(obj.pack(c));
}

Eigen::VectorXd score(const ModelSpec& spec, const Dataset& data, const Coefficients& c) {
  Objective obj(spec, data);
  const Eigen::VectorXd v = obj.pack(c);
  const double f0 = obj.loglik(v);
  if (!std::isfinite(f0))
    throw ConvergenceError("score: log likelihood not finite at evaluation point");
  return obj.grad_central(v, f0);
}

Eigen::MatrixXd observed_information(const ModelSpec& spec, const Dataset& data,
                                     const Coefficients& c) {
  Objective obj(spec, data);
  return -obj.hessian(obj.pack(c));
}

FitResult fit(const ModelSpec& spec, const Dataset& data,
              const std::optional<Coefficients>& init, const Tolerance& tol) {
  // The optimizer runs against a column-standardized copy of the
  // covariates: BFGS starts from an identity metric, so predictor
  // columns on wildly different scales (say 0.1 vs 40) make the first
  // steps thrash and the curvature model take hundreds of iterations
  // to recover.  Centering and scaling is an exact affine
  // reparameterization -- the coefficients, covariance, and likelihood
  // are all reported in the original scale.
  const int n = data.n();
  Eigen::MatrixXd std_cov = data.covariates();
  Eigen::VectorXd col_mean = Eigen::VectorXd::Zero(std_cov.cols());
  Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(std_cov.cols());
  for (int j = 0; j < std_cov.cols(); ++j) {
    const double m = std_cov.col(j).mean();
    const double sd =
        n > 1 ? std::sqrt((std_cov.col(j).array() - m).square().sum() / (n - 1)) : 0.0;
    if (sd > 0.0 && std::isfinite(sd)) {
      col_mean[j] = m;
      col_scale[j] = sd;
      std_cov.col(j) = (std_cov.col(j).array() - m) / sd;
    }
  }
  const Dataset std_data(data.y(), std::move(std_cov), data.names());

  Objective obj(spec, std_data);
  const int p = obj.dim();

  // Per packed coordinate: the owning block's intercept position and
  // the covariate's centering constants (identity for the intercepts).
  std::vector<int> icept(static_cast<std::size_t>(p));
  std::vector<double> pmean(static_cast<std::size_t>(p), 0.0);
  std::vector<double> pscale(static_cast<std::size_t>(p), 1.0);
  {
    std::size_t at = 0;
    for (const std::vector<std::string>* terms :
         {&spec.mu_terms, &spec.alpha_terms, &spec.beta_terms}) {
      const int base = static_cast<int>(at);
      icept[at++] = base;
      for (const std::string& t : *terms) {
        const int c = data.column(t);
        icept[at] = base;
        pmean[at] = col_mean[c];
        pscale[at] = col_scale[c];
        ++at;
      }
    }
  }
  // slope_std = sd * slope, intercept_std = intercept + sum(mean * slope)
  auto to_std = [&](Eigen::VectorXd v) {
    for (int j = 0; j < p; ++j) {
      const std::size_t u = static_cast<std::size_t>(j);
      if (icept[u] != j) {
        v[icept[u]] += pmean[u] * v[j];
        v[j] *= pscale[u];
      }
    }
    return v;
  };
  auto to_orig = [&](Eigen::VectorXd v) {
    for (int j = 0; j < p; ++j) {
      const std::size_t u = static_cast<std::size_t>(j);
      if (icept[u] != j) {
        v[j] /= pscale[u];
        v[icept[u]] -= pmean[u] * v[j];
      }
    }
    return v;
  };

  Eigen::VectorXd x =
      init ? to_std(obj.pack(*init)) : obj.pack(default_init(obj, spec, std_data));
  double f = obj.loglik(x);
  if (!std::isfinite(f) && !init) {
    // Least squares start can misbehave on extreme designs; retreat to
    // a flat quantile surface, which is feasible for any valid data.
    Coefficients c = obj.unpack(Eigen::VectorXd::Zero(p));
    double med = 0.5;
    {
      std::vector<double> ys = data.y();
      std::nth_element(ys.begin(), ys.begin() + ys.size() / 2, ys.end());
      med = std::clamp(ys[ys.size() / 2], 1e-4, 1.0 - 1e-4);
    }
    c.theta[0] = link_apply(spec.mu_link, med);
    x = obj.pack(c);
    f = obj.loglik(x);
  }
  if (!std::isfinite(f))
    throw ConvergenceError("fit: log likelihood is not finite at the starting point");

  // BFGS on F = -loglik.  Forward-difference gradients while far from
  // the optimum, central once the sup norm drops under the switch
  // threshold (and for everything reported to the caller).
  constexpr double kCentralSwitch = 1e-2;
  constexpr double kArmijo = 1e-4;
  // Cap on the sup norm of a proposed step.  The shape predictors live
  // on a log scale, where an uncapped first step (H = I, step = |g|)
  // can multiply a shape by e^10 or more in one move; the likelihood
  // often rises toward a flat asymptote out there, so the line search
  // would accept the jump and strand the iterate on a noisy plateau.
  constexpr double kMaxStep = 2.0;
  bool central = false;
  auto gradient = [&](const Eigen::VectorXd& at, double fat) -> Eigen::VectorXd {
    return central ? -obj.grad_central(at, fat) : -obj.grad_forward(at, fat);
  };

  double F = -f;
  Eigen::VectorXd gF = gradient(x, f);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(p, p);
  bool scaled = false;
  bool converged = false;
  bool steepest_retry = false;
  int iterations = 0;

  for (int it = 1; it <= tol.max_iter; ++it) {
    iterations = it;
    Eigen::VectorXd d = -(H * gF);
    double dd = d.dot(gF);
    if (!(dd < 0.0)) {
      H.setIdentity();
      scaled = false;
      d = -gF;
      dd = -gF.squaredNorm();
    }
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (dmax > kMaxStep) {
      d *= kMaxStep / dmax;
      dd *= kMaxStep / dmax;
    }

    double t = 1.0;
    double Fn = kInf;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + t * d;
      Fn = -obj.loglik(xn);
      if (std::isfinite(Fn) && Fn <= F + kArmijo * t * dd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!central) {
        central = true;
        gF = gradient(x, -F);
        continue;  // retry the search with an accurate gradient
      }
      if (!steepest_retry) {
        // a curvature model polluted by finite-difference noise can
        // propose ascent directions that still satisfy dd < 0; give the
        // stall point one fresh steepest-descent attempt
        steepest_retry = true;
        H.setIdentity();
        scaled = false;
        continue;
      }
      break;  // no representable progress left
    }
    steepest_retry = false;

    const Eigen::VectorXd s = xn - x;
    x = xn;
    const double dF = std::fabs(F - Fn);
    F = Fn;
    Eigen::VectorXd gF_new = gradient(x, -F);
    const Eigen::VectorXd yv = gF_new - gF;
    const double sy = s.dot(yv);
    if (!scaled && sy > 0.0 && yv.squaredNorm() > 0.0) {
      H *= sy / yv.squaredNorm();
      scaled = true;
    }
    if (sy > 1e-10 * s.norm() * yv.norm()) {
      // inverse BFGS update
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * yv;
      H -= rho * (s * Hy.transpose() + Hy * s.transpose());
      H += rho * rho * (yv.dot(Hy)) * (s * s.transpose());
      H += rho * (s * s.transpose());
    }
    gF = gF_new;

    const double gnorm = gF.lpNorm<Eigen::Infinity>();
    if (!central && gnorm < kCentralSwitch) {
      central = true;
      gF = gradient(x, -F);
      continue;
    }
    if (central && gnorm <= tol.abs_tol && dF <= tol.rel_tol * (1.0 + std::fabs(F))) {
      converged = true;
      break;
    }
  }

  if (!central) {
    central = true;
    gF = gradient(x, -F);
  }

  const Eigen::VectorXd x_orig = to_orig(x);
  FitResult r;
  r.spec = spec;
  r.coef = obj.unpack(x_orig);
  r.names = parameter_names(spec);
  r.loglik = -F;
  r.grad_norm = gF.lpNorm<Eigen::Infinity>();
  r.iterations = iterations;
  r.n_obs = n;
  r.n_params = p;
  r.converged = converged || r.grad_norm <= tol.abs_tol;
  r.aic = -2.0 * r.loglik + 2.0 * p;
  r.bic = -2.0 * r.loglik + p * std::log(static_cast<double>(n));

  Objective report_obj(spec, data);  // original scale for the covariance
  const Eigen::MatrixXd info = -report_obj.hessian(x_orig);
  r.covariance = Eigen::MatrixXd::Constant(p, p, kNaN);
  r.se.theta = Eigen::VectorXd::Constant(obj.k_mu(), kNaN);
  r.se.nu = Eigen::VectorXd::Constant(obj.k_alpha(), kNaN);
  r.se.eta = Eigen::VectorXd::Constant(obj.k_beta(), kNaN);
  if (info.allFinite()) {
    const Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() == Eigen::Success) {
      r.covariance = llt.solve(Eigen::MatrixXd::Identity(p, p));
      if (r.covariance.allFinite() && (r.covariance.diagonal().array() > 0.0).all()) {
        const Eigen::VectorXd se = r.covariance.diagonal().array().sqrt();
        Coefficients cse = obj.unpack(se);
        r.se = cse;
        r.has_std_errors = true;
      } else {
        r.covariance = Eigen::MatrixXd::Constant(p, p, kNaN);
      }
    }
  }
  return r;
}

std::vector<WaldRow> wald_inference(const FitResult& fit, double level) {
  if (!fit.has_std_errors)
    throw std::runtime_error(
        "wald_inference: observed information is singular or indefinite; standard errors "
        "unavailable");
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("wald_inference: level must lie in (0, 1)");
  Eigen::VectorXd est(fit.n_params), se(fit.n_params);
  est << fit.coef.theta, fit.coef.nu, fit.coef.eta;
  se << fit.se.theta, fit.se.nu, fit.se.eta;
  const double q = normal_quantile(0.5 + level / 2.0);
  std::vector<WaldRow> rows;
  rows.reserve(fit.n_params);
  for (int j = 0; j < fit.n_params; ++j) {
    WaldRow row;
    row.name = fit.names[static_cast<std::size_t>(j)];
    row.estimate = est[j];
    row.se = se[j];
    row.z = est[j] / se[j];
    row.p_value = 2.0 * normal_cdf(-std::fabs(row.z));
    row.ci_low = est[j] - q * se[j];
    row.ci_high = est[j] + q * se[j];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gb3reg
