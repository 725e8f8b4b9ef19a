#pragma once

#include <functional>

#include "tailineq/core.hpp"

namespace tailineq {

struct NelderMeadOptions {
  // Converged when every vertex lies within x_tol (max-norm) of the best
  // vertex and the objective spread is below f_tol * max(1, |f_best|).
  double x_tol = 1e-8;
  double f_tol = 1e-10;
  int max_iterations = 10000;
  double initial_step = 0.25;
  // Fresh simplexes built around the incumbent after convergence, to guard
  // against a collapsed simplex.
  int restarts = 2;
};

struct NelderMeadResult {
  VectorXd x;
  double f = 0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const VectorXd&)>;

// Derivative-free minimisation. The objective may return +inf to mark
// infeasible points; the start must be feasible.
NelderMeadResult nelder_mead(const Objective& objective, const VectorXd& start,
                             const NelderMeadOptions& opts = {});

}  // namespace tailineq
