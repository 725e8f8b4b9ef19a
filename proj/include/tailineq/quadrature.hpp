#pragma once

#include <functional>

namespace tailineq {

struct QuadratureResult {
  double value = 0;
  double error = 0;
  int intervals = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0;
  int max_intervals = 4000;
};

// Globally adaptive 15-point Gauss-Kronrod on a finite interval. The worst
// subinterval is bisected until the summed error estimate is below
// max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

// Integral over [a, inf) through x = a + t / (1 - t). The integrand should
// decay at least exponentially; callers with power-law tails integrate in a
// logarithmic coordinate instead.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a,
                                       const QuadratureOptions& opts = {});

}  // namespace tailineq
