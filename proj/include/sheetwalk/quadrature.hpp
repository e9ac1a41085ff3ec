#pragma once

#include <functional>

namespace sheetwalk {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int segments = 0;
};

// Deterministic adaptive Gauss-Kronrod 7/15 integration of f over [a, b] to
// the given absolute tolerance (recursive bisection, tolerance split in half
// per side). Throws if b < a or abs_tol <= 0.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol);

}  // namespace sheetwalk
