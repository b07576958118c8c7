// Adaptive Simpson quadrature, used by the symbol/eigenmode oracles.
#pragma once

#include <functional>

namespace toepspec {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool budget_exhausted = false;
};

// Adaptive Simpson on [a, b] to absolute tolerance tol. Subdivision stops at
// max_depth or when the evaluation budget runs out; either way the deferred
// panel deltas are folded into error_estimate.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-11, int max_depth = 48, long max_evals = 2000000);

}  // namespace toepspec
