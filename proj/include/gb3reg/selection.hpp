#pragma once

#include <string>
#include <vector>

#include "gb3reg/regression.hpp"

namespace gb3reg {

// One removal during backward elimination.  p_value is the Wald
// p-value the term had in the model it was removed from; the criteria
// describe the refitted model after removal.
struct EliminationStep {
  std::string component;  // "mu", "alpha", or "beta"
  std::string term;
  double p_value;
  double loglik;
  double aic;
  double bic;
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;
  ModelSpec final_spec;
  FitResult final_fit;
  bool completed = false;     // false when a refit failed mid-sequence
  std::string abort_reason;   // empty when completed
};

// Iteratively removes the single non-intercept term with the largest
// Wald p-value above `threshold`, refitting after each removal with a
// warm start from the surviving coefficients, until every remaining
// term is significant.  Intercepts are never candidates.  Ties on the
// p-value are broken deterministically: beta component first, then
// alpha, then mu, and within a component the later column first.
// Non-convergence (or a singular information matrix) at any step stops
// the procedure and returns the trace accumulated so far with
// completed = false.
EliminationTrace backward_eliminate(const ModelSpec& spec, const Dataset& data,
                                    double threshold = 0.05,
                                    const Tolerance& tol = fit_tolerance());

}  // namespace gb3reg
