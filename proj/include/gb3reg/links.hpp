#pragma once

#include <string>
#include <string_view>

namespace gb3reg {

// Link functions mapping a constrained parameter to the real line.
// The first four are for quantities living in (0, 1); `log` is for the
// positive shape parameters.
enum class Link { logit, probit, loglog, cloglog, log };

// Inverse-link outputs for the unit-interval links are clamped to
// [kLinkClamp, 1 - kLinkClamp] so downstream densities never see an
// exact 0 or 1.
inline constexpr double kLinkClamp = 1e-12;

// g(v): parameter space -> linear predictor scale.
double link_apply(Link link, double v);

// g^{-1}(eta): linear predictor -> parameter space (clamped).
double link_inverse(Link link, double eta);

// d/d eta of link_inverse, used by delta-method style consumers.
double link_inv_derivative(Link link, double eta);

// First-order coefficient of log g^{-1}(eta) expanded around eta = 0.
// Differentiated from the implemented inverse, so it stays consistent
// with link_inverse by construction:
//   logit 1/2, probit sqrt(2/pi), loglog 1, cloglog e^{-1}/(1 - e^{-1}).
double taylor_slope(Link link);

// Case-sensitive parse of "logit", "probit", "loglog", "cloglog",
// "log"; throws std::invalid_argument otherwise.
Link parse_link(std::string_view name);
std::string_view link_name(Link link);

}  // namespace gb3reg
