#include "gb3reg/selection.hpp"

#include <cmath>
#include <optional>

namespace gb3reg {

namespace {

struct Candidate {
  int component;  // 0 = mu, 1 = alpha, 2 = beta
  int position;   // index into that component's term list
  double p_value;
};

const char* component_name(int c) { return c == 0 ? "mu" : (c == 1 ? "alpha" : "beta"); }

// Higher p-value wins; exact ties prefer beta over alpha over mu, then
// the later column within a component.
bool beats(const Candidate& a, const Candidate& b) {
  if (a.p_value != b.p_value) return a.p_value > b.p_value;
  if (a.component != b.component) return a.component > b.component;
  return a.position > b.position;
}

std::vector<std::string>& terms_of(ModelSpec& spec, int component) {
  return component == 0 ? spec.mu_terms : (component == 1 ? spec.alpha_terms : spec.beta_terms);
}

// Wald p-values of the non-intercept terms, in packed order, mapped to
// (component, position) coordinates.
std::vector<Candidate> removable(const FitResult& fit, double threshold) {
  const std::vector<WaldRow> rows = wald_inference(fit);
  std::vector<Candidate> out;
  const auto sizes = {static_cast<int>(fit.spec.mu_terms.size()),
                      static_cast<int>(fit.spec.alpha_terms.size()),
                      static_cast<int>(fit.spec.beta_terms.size())};
  std::size_t r = 0;
  int component = 0;
  for (int n_terms : sizes) {
    ++r;  // skip the intercept row
    for (int pos = 0; pos < n_terms; ++pos, ++r) {
      const double p = rows[r].p_value;
      if (p > threshold) out.push_back({component, pos, p});
    }
    ++component;
  }
  return out;
}

// Drop one coefficient entry so the reduced fit starts from the
// surviving estimates.
Coefficients shrink(const Coefficients& c, int component, int position) {
  auto drop = [](const Eigen::VectorXd& v, int idx) {
    Eigen::VectorXd out(v.size() - 1);
    out.head(idx) = v.head(idx);
    out.tail(v.size() - 1 - idx) = v.tail(v.size() - 1 - idx);
    return out;
  };
  Coefficients out = c;
  const int entry = position + 1;  // term positions sit after the intercept
  if (component == 0)
    out.theta = drop(c.theta, entry);
  else if (component == 1)
    out.nu = drop(c.nu, entry);
  else
    out.eta = drop(c.eta, entry);
  return out;
}

}  // namespace

EliminationTrace backward_eliminate(const ModelSpec& spec, const Dataset& data,
                                    double threshold, const Tolerance& tol) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::domain_error("backward_eliminate: threshold must lie in (0, 1)");

  EliminationTrace trace;
  trace.final_spec = spec;

  FitResult current = fit(spec, data, std::nullopt, tol);
  trace.final_fit = current;
  if (!current.converged) {
    trace.abort_reason = "initial fit did not converge";
    return trace;
  }

  const std::size_t max_steps =
      spec.mu_terms.size() + spec.alpha_terms.size() + spec.beta_terms.size();
  for (std::size_t step = 0; step <= max_steps; ++step) {
    std::vector<Candidate> candidates;
    try {
      candidates = removable(current, threshold);
    } catch (const std::runtime_error& e) {
      trace.abort_reason = e.what();
      return trace;
    }
    if (candidates.empty()) {
      trace.completed = true;
      return trace;
    }
    Candidate worst = candidates.front();
    for (const Candidate& c : candidates)
      if (beats(c, worst)) worst = c;

    ModelSpec reduced = current.spec;
    std::vector<std::string>& terms = terms_of(reduced, worst.component);
    const std::string removed = terms[static_cast<std::size_t>(worst.position)];
    terms.erase(terms.begin() + worst.position);

    const Coefficients start = shrink(current.coef, worst.component, worst.position);
    FitResult next = fit(reduced, data, start, tol);
    if (!next.converged) {
      trace.abort_reason = "refit after removing " +
                           std::string(component_name(worst.component)) + ":" + removed +
                           " did not converge";
      return trace;
    }
    trace.steps.push_back({component_name(worst.component), removed, worst.p_value,
                           next.loglik, next.aic, next.bic});
    current = std::move(next);
    trace.final_spec = current.spec;
    trace.final_fit = current;
  }
  trace.abort_reason = "exceeded the maximum number of removals";  // unreachable
  return trace;
}

}  // namespace gb3reg
