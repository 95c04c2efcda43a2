#include "gb3reg/links.hpp"

#include <cmath>
#include <stdexcept>

#include "gb3reg/specfun.hpp"

namespace gb3reg {

namespace {

double clamp_unit(double v) {
  if (v < kLinkClamp) return kLinkClamp;
  if (v > 1.0 - kLinkClamp) return 1.0 - kLinkClamp;
  return v;
}

constexpr double kSqrt2Pi = 2.50662827463100050242;

}  // namespace

double link_apply(Link link, double v) {
  switch (link) {
    case Link::logit:
      if (!(v > 0.0 && v < 1.0)) throw std::domain_error("logit: v must lie in (0, 1)");
      return std::log(v / (1.0 - v));
    case Link::probit:
      if (!(v > 0.0 && v < 1.0)) throw std::domain_error("probit: v must lie in (0, 1)");
      return normal_quantile(v);
    case Link::loglog:
      if (!(v > 0.0 && v < 1.0)) throw std::domain_error("loglog: v must lie in (0, 1)");
      return -std::log(-std::log(v));
    case Link::cloglog:
      if (!(v > 0.0 && v < 1.0)) throw std::domain_error("cloglog: v must lie in (0, 1)");
      return std::log(-std::log1p(-v));
    case Link::log:
      if (!(v > 0.0)) throw std::domain_error("log link: v must be positive");
      return std::log(v);
  }
  throw std::logic_error("link_apply: unknown link");
}

double link_inverse(Link link, double eta) {
  switch (link) {
    case Link::logit:
      // 1 / (1 + e^-eta), stable in both tails
      return clamp_unit(eta >= 0.0 ? 1.0 / (1.0 + std::exp(-eta))
                                   : std::exp(eta) / (1.0 + std::exp(eta)));
    case Link::probit:
      return clamp_unit(normal_cdf(eta));
    case Link::loglog:
      return clamp_unit(std::exp(-std::exp(-eta)));
    case Link::cloglog:
      return clamp_unit(-std::expm1(-std::exp(eta)));
    case Link::log:
      return std::exp(eta);
  }
  throw std::logic_error("link_inverse: unknown link");
}

double link_inv_derivative(Link link, double eta) {
  switch (link) {
    case Link::logit: {
      const double m = link_inverse(Link::logit, eta);
      return m * (1.0 - m);
    }
    case Link::probit:
      return std::exp(-0.5 * eta * eta) / kSqrt2Pi;
    case Link::loglog: {
      const double t = std::exp(-eta);
      return t * std::exp(-t);
    }
    case Link::cloglog: {
      const double t = std::exp(eta);
      return t * std::exp(-t);
    }
    case Link::log:
      return std::exp(eta);
  }
  throw std::logic_error("link_inv_derivative: unknown link");
}

double taylor_slope(Link link) {
  // d/d eta log g^{-1}(eta) at eta = 0, i.e. (g^{-1})'(0) / g^{-1}(0).
  switch (link) {
    case Link::logit:
      return 0.5;
    case Link::probit:
      return 2.0 / kSqrt2Pi;  // sqrt(2/pi)
    case Link::loglog:
      return 1.0;
    case Link::cloglog: {
      const double e1 = std::exp(-1.0);
      return e1 / (1.0 - e1);
    }
    case Link::log:
      return 1.0;
  }
  throw std::logic_error("taylor_slope: unknown link");
}

Link parse_link(std::string_view name) {
  if (name == "logit") return Link::logit;
  if (name == "probit") return Link::probit;
  if (name == "loglog") return Link::loglog;
  if (name == "cloglog") return Link::cloglog;
  if (name == "log") return Link::log;
  throw std::invalid_argument("unknown link: " + std::string(name));
}

std::string_view link_name(Link link) {
  switch (link) {
    case Link::logit:
      return "logit";
    case Link::probit:
      return "probit";
    case Link::loglog:
      return "loglog";
    case Link::cloglog:
      return "cloglog";
    case Link::log:
      return "log";
  }
  return "unknown";
}

}  // namespace gb3reg
