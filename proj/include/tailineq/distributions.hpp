#pragma once

// Tail laws used above a threshold:
//   GPD   G(x; sigma, gamma) = 1 - (1 + gamma x / sigma)^(-1/gamma),  x > 0
//   Pa    F(x; gamma)        = 1 - x^(-1/gamma),                      x > 1
//   PPD   S(x; gamma, c, tau) = (1 - c) x^(-1/gamma) + c x^(-1/gamma - tau), x > 1
// Only the heavy-tailed branch gamma > 0 is supported.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

#include "tailineq/core.hpp"
#include "tailineq/roots.hpp"

namespace tailineq {

template <typename Scalar>
struct GpdParams {
  Scalar sigma;
  Scalar gamma;
};

template <typename Scalar>
struct ParetoParams {
  Scalar gamma;
};

template <typename Scalar>
struct PpdParams {
  Scalar gamma;
  Scalar c;
  Scalar tau;
};

using Gpd = GpdParams<double>;
using Pareto = ParetoParams<double>;
using Ppd = PpdParams<double>;

enum class TailFamily { Gpd, Pareto, Ppd };

using TailParams = std::variant<Gpd, Pareto, Ppd>;

inline std::string to_string(TailFamily f) {
  switch (f) {
    case TailFamily::Gpd: return "GPD";
    case TailFamily::Pareto: return "Pa";
    case TailFamily::Ppd: return "PPD";
  }
  return "?";
}

inline TailFamily family_of(const TailParams& p) {
  return static_cast<TailFamily>(p.index());
}

// ---------------------------------------------------------------------------
// Parameter validation

template <typename Scalar>
bool is_valid(const GpdParams<Scalar>& p) {
  return std::isfinite(p.sigma) && std::isfinite(p.gamma) && p.sigma > 0 &&
         p.gamma > 0;
}

template <typename Scalar>
bool is_valid(const ParetoParams<Scalar>& p) {
  return std::isfinite(p.gamma) && p.gamma > 0;
}

template <typename Scalar>
bool is_valid(const PpdParams<Scalar>& p) {
  return std::isfinite(p.gamma) && std::isfinite(p.c) &&
         std::isfinite(p.tau) && p.gamma > 0 && p.tau > 0 &&
         p.c > Scalar(-1) / p.tau && p.c < 1;
}

// Smallest c for which the PPD density stays positive on (1, inf). The
// density at x = 1 equals 1/gamma + c tau, so c > -1/(gamma tau) is needed in
// addition to the nominal c > -1/tau.
template <typename Scalar>
Scalar ppd_c_lower_bound(Scalar gamma, Scalar tau) {
  return std::max(Scalar(-1) / tau, Scalar(-1) / (gamma * tau));
}

template <typename Scalar>
bool ppd_density_positive(const PpdParams<Scalar>& p) {
  return is_valid(p) && p.c > ppd_c_lower_bound(p.gamma, p.tau);
}

template <typename Params>
void require_valid(const Params& p, const char* what) {
  if (!is_valid(p)) throw DomainError(std::string(what) + ": invalid parameters");
}

// ---------------------------------------------------------------------------
// GPD

namespace detail {
// log(1 + gamma x / sigma) / gamma, the exponent of the GPD survival.
template <typename Scalar>
Scalar gpd_log_sf_neg(Scalar x, const GpdParams<Scalar>& p) {
  return std::log1p(p.gamma * x / p.sigma) / p.gamma;
}
}  // namespace detail

template <typename Scalar>
Scalar gpd_sf(Scalar x, const GpdParams<Scalar>& p) {
  require_valid(p, "gpd_sf");
  if (x < 0) throw DomainError("gpd_sf: x must be >= 0");
  return std::exp(-detail::gpd_log_sf_neg(x, p));
}

template <typename Scalar>
Scalar gpd_cdf(Scalar x, const GpdParams<Scalar>& p) {
  require_valid(p, "gpd_cdf");
  if (x < 0) throw DomainError("gpd_cdf: x must be >= 0");
  return -std::expm1(-detail::gpd_log_sf_neg(x, p));
}

template <typename Scalar>
Scalar gpd_log_pdf(Scalar x, const GpdParams<Scalar>& p) {
  if (!(x >= 0)) return -std::numeric_limits<Scalar>::infinity();
  return -std::log(p.sigma) -
         (1 / p.gamma + 1) * std::log1p(p.gamma * x / p.sigma);
}

template <typename Scalar>
Scalar gpd_pdf(Scalar x, const GpdParams<Scalar>& p) {
  require_valid(p, "gpd_pdf");
  return std::exp(gpd_log_pdf(x, p));
}

template <typename Scalar>
Scalar gpd_quantile(Scalar prob, const GpdParams<Scalar>& p) {
  require_valid(p, "gpd_quantile");
  if (!(prob >= 0 && prob < 1)) {
    throw DomainError("gpd_quantile: probability must lie in [0, 1)");
  }
  return p.sigma / p.gamma * std::expm1(-p.gamma * std::log1p(-prob));
}

// ---------------------------------------------------------------------------
// Strict Pareto

template <typename Scalar>
Scalar pareto_sf(Scalar x, const ParetoParams<Scalar>& p) {
  require_valid(p, "pareto_sf");
  if (x < 1) throw DomainError("pareto_sf: x must be >= 1");
  return std::exp(-std::log(x) / p.gamma);
}

template <typename Scalar>
Scalar pareto_cdf(Scalar x, const ParetoParams<Scalar>& p) {
  require_valid(p, "pareto_cdf");
  if (x < 1) throw DomainError("pareto_cdf: x must be >= 1");
  return -std::expm1(-std::log(x) / p.gamma);
}

template <typename Scalar>
Scalar pareto_log_pdf(Scalar x, const ParetoParams<Scalar>& p) {
  if (!(x >= 1)) return -std::numeric_limits<Scalar>::infinity();
  return -std::log(p.gamma) - (1 / p.gamma + 1) * std::log(x);
}

template <typename Scalar>
Scalar pareto_pdf(Scalar x, const ParetoParams<Scalar>& p) {
  require_valid(p, "pareto_pdf");
  return std::exp(pareto_log_pdf(x, p));
}

template <typename Scalar>
Scalar pareto_quantile(Scalar prob, const ParetoParams<Scalar>& p) {
  require_valid(p, "pareto_quantile");
  if (!(prob >= 0 && prob < 1)) {
    throw DomainError("pareto_quantile: probability must lie in [0, 1)");
  }
  return std::exp(-p.gamma * std::log1p(-prob));
}

// ---------------------------------------------------------------------------
// Perturbed Pareto

template <typename Scalar>
Scalar ppd_sf(Scalar x, const PpdParams<Scalar>& p) {
  require_valid(p, "ppd_sf");
  if (x < 1) throw DomainError("ppd_sf: x must be >= 1");
  const Scalar lx = std::log(x);
  return (1 - p.c) * std::exp(-lx / p.gamma) +
         p.c * std::exp(-lx * (1 / p.gamma + p.tau));
}

template <typename Scalar>
Scalar ppd_cdf(Scalar x, const PpdParams<Scalar>& p) {
  require_valid(p, "ppd_cdf");
  if (x < 1) throw DomainError("ppd_cdf: x must be >= 1");
  const Scalar lx = std::log(x);
  return -(1 - p.c) * std::expm1(-lx / p.gamma) -
         p.c * std::expm1(-lx * (1 / p.gamma + p.tau));
}

template <typename Scalar>
Scalar ppd_pdf(Scalar x, const PpdParams<Scalar>& p) {
  require_valid(p, "ppd_pdf");
  if (!(x >= 1)) return 0;
  const Scalar a = 1 / p.gamma;
  const Scalar lx = std::log(x);
  return (1 - p.c) * a * std::exp(-(a + 1) * lx) +
         p.c * (a + p.tau) * std::exp(-(a + p.tau + 1) * lx);
}

template <typename Scalar>
Scalar ppd_log_pdf(Scalar x, const PpdParams<Scalar>& p) {
  if (!(x >= 1)) return -std::numeric_limits<Scalar>::infinity();
  // x^(-a-1) [ (1-c) a + c (a + tau) x^(-tau) ]
  const Scalar a = 1 / p.gamma;
  const Scalar lx = std::log(x);
  const Scalar bracket =
      (1 - p.c) * a + p.c * (a + p.tau) * std::exp(-p.tau * lx);
  if (!(bracket > 0)) return -std::numeric_limits<Scalar>::infinity();
  return std::log(bracket) - (a + 1) * lx;
}

inline constexpr double kPpdQuantileTolerance = 1e-10;

// No closed form: invert the cdf in log(x) by bracketed root-finding.
template <typename Scalar>
Scalar ppd_quantile(Scalar prob, const PpdParams<Scalar>& p,
                    Scalar tol = Scalar(kPpdQuantileTolerance)) {
  if (!ppd_density_positive(p)) {
    throw DomainError("ppd_quantile: parameters do not give a positive density");
  }
  if (!(prob >= 0 && prob < 1)) {
    throw DomainError("ppd_quantile: probability must lie in [0, 1)");
  }
  if (prob == 0) return 1;

  // S(x) <= max(1, 1 - c) x^(-1/gamma) bounds the upper end of the bracket.
  const Scalar lead = std::max(Scalar(1), 1 - p.c);
  Scalar log_hi = -p.gamma * (std::log1p(-prob) - std::log(lead));
  auto f = [&](Scalar lx) { return ppd_cdf(std::exp(lx), p) - prob; };
  while (f(log_hi) < 0) log_hi = 2 * log_hi + 1;
  return std::exp(bracketed_root(f, Scalar(0), log_hi, tol));
}

// ---------------------------------------------------------------------------
// Family-dispatched helpers on the double-precision variant.

inline double tail_lower_endpoint(TailFamily f) {
  return f == TailFamily::Gpd ? 0.0 : 1.0;
}

inline double tail_cdf(double x, const TailParams& p) {
  return std::visit(
      [x](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) return gpd_cdf(x, q);
        else if constexpr (std::is_same_v<T, Pareto>) return pareto_cdf(x, q);
        else return ppd_cdf(x, q);
      },
      p);
}

inline double tail_sf(double x, const TailParams& p) {
  return std::visit(
      [x](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) return gpd_sf(x, q);
        else if constexpr (std::is_same_v<T, Pareto>) return pareto_sf(x, q);
        else return ppd_sf(x, q);
      },
      p);
}

inline double tail_pdf(double x, const TailParams& p) {
  return std::visit(
      [x](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) return gpd_pdf(x, q);
        else if constexpr (std::is_same_v<T, Pareto>) return pareto_pdf(x, q);
        else return ppd_pdf(x, q);
      },
      p);
}

inline double tail_quantile(double prob, const TailParams& p) {
  return std::visit(
      [prob](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) return gpd_quantile(prob, q);
        else if constexpr (std::is_same_v<T, Pareto>) return pareto_quantile(prob, q);
        else return ppd_quantile(prob, q);
      },
      p);
}

inline double tail_gamma(const TailParams& p) {
  return std::visit([](const auto& q) { return q.gamma; }, p);
}

inline bool is_valid(const TailParams& p) {
  return std::visit([](const auto& q) { return is_valid(q); }, p);
}

// Sum of log-densities. Returns -inf when a point falls outside the support
// or the parameters are invalid.
template <typename Params, typename Derived>
typename Derived::Scalar log_likelihood(const Params& p,
                                        const Eigen::ArrayBase<Derived>& data) {
  using Scalar = typename Derived::Scalar;
  if (data.size() == 0) throw DomainError("log_likelihood: empty data");
  if (!is_valid(p)) return -std::numeric_limits<Scalar>::infinity();
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    Scalar v;
    if constexpr (std::is_same_v<Params, GpdParams<Scalar>>) {
      v = data(i) > 0 ? gpd_log_pdf(data(i), p)
                      : -std::numeric_limits<Scalar>::infinity();
    } else if constexpr (std::is_same_v<Params, ParetoParams<Scalar>>) {
      v = data(i) > 1 ? pareto_log_pdf(data(i), p)
                      : -std::numeric_limits<Scalar>::infinity();
    } else {
      v = data(i) > 1 ? ppd_log_pdf(data(i), p)
                      : -std::numeric_limits<Scalar>::infinity();
    }
    if (!std::isfinite(v)) return -std::numeric_limits<Scalar>::infinity();
    sum += v;
  }
  return sum;
}

template <typename Derived>
double log_likelihood(const TailParams& p, const Eigen::ArrayBase<Derived>& data) {
  return std::visit([&](const auto& q) { return log_likelihood(q, data); }, p);
}

}  // namespace tailineq
