#pragma once

// Quadrature references for functionals of a semi-parametric cdf. The body
// is handled as an exact step function; tail integrals go through the Boost
// integrators in oracles.hpp, never the library's own closed forms.

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "tailineq/spcdf.hpp"

namespace oracle {

// Tail survival in data units, conditional on X > u.
inline double tail_survival(const tailineq::SemiParamCdf& F, double x) {
  return tailineq::tail_sf(F.to_tail_coordinate(x), F.tail()->params);
}

// int_a^inf g(x) dx taken in x = a e^s, which turns power decay into
// exponential decay.
inline double integrate_log_scale(const std::function<double(double)>& g, double a) {
  return integrate_upper(
      [&](double s) {
        const double x = a * std::exp(s);
        if (!std::isfinite(x)) return 0.0;
        const double v = g(x);
        return v == 0.0 ? 0.0 : v * x;
      },
      0.0, 1e-13);
}

// int_0^inf (1 - F(x)) dx.
inline double sp_mean(const tailineq::SemiParamCdf& F) {
  const tailineq::ArrayXd body = F.body();
  const double n = static_cast<double>(F.n());
  double m = body(0);  // F = 0 on (0, X_1)
  m += step_integral(body, [&](Eigen::Index i) { return (i + 1) / n; },
                     [](double f) { return 1.0 - f; });
  if (F.tail()) {
    m += F.alpha() *
         integrate_log_scale([&](double x) { return tail_survival(F, x); }, F.threshold());
  }
  return m;
}

// (1 / mu) int_0^inf F (1 - F) dx with mu from sp_mean above.
inline double sp_gini(const tailineq::SemiParamCdf& F) {
  const tailineq::ArrayXd body = F.body();
  const double n = static_cast<double>(F.n());
  double g = step_integral(body, [&](Eigen::Index i) { return (i + 1) / n; },
                           [](double f) { return f * (1.0 - f); });
  if (F.tail()) {
    const double a = F.alpha();
    g += integrate_log_scale(
        [&](double x) {
          const double sf = a * tail_survival(F, x);
          return sf * (1.0 - sf);
        },
        F.threshold());
  }
  return g / oracle::sp_mean(F);
}

// E[log X]: body log-mass plus alpha (log u + int_u^inf S(x) / x dx).
inline double sp_mean_log(const tailineq::SemiParamCdf& F) {
  const double n = static_cast<double>(F.n());
  double m = F.body().log().sum() / n;
  if (F.tail()) {
    m += F.alpha() *
         (std::log(F.threshold()) +
          integrate_log_scale([&](double x) { return tail_survival(F, x) / x; },
                              F.threshold()));
  }
  return m;
}

}  // namespace oracle
