#include "tailineq/spcdf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailineq/quadrature.hpp"

namespace tailineq {

SemiParamCdf::SemiParamCdf(Sample sample, std::optional<TailFit> tail)
    : sample_(std::move(sample)), tail_(std::move(tail)) {}

double SemiParamCdf::alpha() const {
  return tail_ ? static_cast<double>(tail_->k) / static_cast<double>(n()) : 0.0;
}

double SemiParamCdf::threshold() const {
  return tail_ ? tail_->u : sample_.order_stat(n());
}

double SemiParamCdf::to_tail_coordinate(double x) const {
  return tail_->family() == TailFamily::Gpd ? x - tail_->u : x / tail_->u;
}

double SemiParamCdf::from_tail_coordinate(double t) const {
  return tail_->family() == TailFamily::Gpd ? tail_->u + t : tail_->u * t;
}

double SemiParamCdf::cdf(double x) const {
  const ArrayXd& v = sample_.values();
  if (x < v(0)) return 0.0;
  if (!tail_ || x <= tail_->u) {
    const auto b = body();
    const auto count = std::upper_bound(b.begin(), b.end(), x) - b.begin();
    return static_cast<double>(count) / static_cast<double>(n());
  }
  return 1.0 - alpha() * tail_sf(to_tail_coordinate(x), tail_->params);
}

SemiParamCdf build_sp_cdf(const Sample& s, const std::optional<TailFit>& fit) {
  if (fit) {
    if (fit->n != s.size() || fit->k < 1 || fit->k >= s.size()) {
      throw InconsistentFitError("build_sp_cdf: fit was made on a different sample size");
    }
    if (fit->u != s.order_stat(s.size() - fit->k)) {
      std::ostringstream os;
      os << "build_sp_cdf: threshold " << fit->u << " is not X_{n-k,n} = "
         << s.order_stat(s.size() - fit->k);
      throw InconsistentFitError(os.str());
    }
    if (!is_valid(fit->params)) {
      throw DomainError("build_sp_cdf: tail parameters are invalid");
    }
  }
  return SemiParamCdf(s, fit);
}

double sp_quantile(const SemiParamCdf& F, double p) {
  if (!(p > 0 && p < 1)) throw DomainError("sp_quantile: p must lie in (0, 1)");
  const Eigen::Index n = F.n();
  const Eigen::Index body = F.body_size();
  const auto idx = static_cast<Eigen::Index>(
      std::ceil(static_cast<double>(n) * p - 1e-9));
  if (!F.tail() || idx <= body) {
    return F.sample().order_stat(std::clamp<Eigen::Index>(idx, 1, body));
  }
  const double w = (p - static_cast<double>(body) / static_cast<double>(n)) /
                   F.alpha();
  return F.from_tail_coordinate(tail_quantile(std::clamp(w, 0.0, 1.0 - 1e-16),
                                              F.tail()->params));
}

double sp_mean(const SemiParamCdf& F) {
  const double body_mean = F.body().sum() / static_cast<double>(F.n());
  if (!F.tail()) return body_mean;
  return body_mean + F.alpha() * (F.tail()->u + tail_moments::mean_excess(*F.tail()));
}

// ---------------------------------------------------------------------------

namespace tail_moments {
namespace {

void require_finite_mean(double gamma, const char* what) {
  if (!(gamma < 1)) {
    std::ostringstream os;
    os << what << ": tail index " << gamma << " >= 1, the mean is infinite";
    throw InfiniteMeanError(os.str());
  }
}

constexpr QuadratureOptions kTailQuadrature{1e-11, 0.0, 4000};

// For relative-exceedance laws: S(e^v) e^v, with exponents combined so large
// v neither overflows nor produces inf * 0.
double survival_times_jacobian(double v, const TailParams& p) {
  if (const auto* pa = std::get_if<Pareto>(&p)) {
    return std::exp(v * (1.0 - 1.0 / pa->gamma));
  }
  const auto& q = std::get<Ppd>(p);
  const double a = 1.0 / q.gamma;
  return (1.0 - q.c) * std::exp(v * (1.0 - a)) +
         q.c * std::exp(v * (1.0 - a - q.tau));
}

double survival_log_coordinate(double v, const TailParams& p) {
  if (const auto* pa = std::get_if<Pareto>(&p)) return std::exp(-v / pa->gamma);
  const auto& q = std::get<Ppd>(p);
  const double a = 1.0 / q.gamma;
  return (1.0 - q.c) * std::exp(-v * a) + q.c * std::exp(-v * (a + q.tau));
}

// integral_{y0}^inf S(y) (1 - weight S(y)) dy for a relative-exceedance law.
double relative_tail_integral(const TailParams& p, double y0, double weight) {
  auto f = [&](double v) {
    return survival_times_jacobian(v, p) *
           (1.0 - weight * survival_log_coordinate(v, p));
  };
  const auto r = integrate_to_infinity(f, std::log(y0), kTailQuadrature);
  return r.value;
}

}  // namespace

double mean_excess(const TailFit& fit) {
  require_finite_mean(fit.gamma(), "mean_excess");
  return std::visit(
      [&](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) {
          return q.sigma / (1.0 - q.gamma);
        } else if constexpr (std::is_same_v<T, Pareto>) {
          return fit.u * q.gamma / (1.0 - q.gamma);
        } else {
          // E[Y] - 1 = integral_1^inf S(y) dy
          return fit.u * ((1.0 - q.c) * q.gamma / (1.0 - q.gamma) +
                          q.c * q.gamma / (1.0 - q.gamma + q.gamma * q.tau));
        }
      },
      fit.params);
}

double upper_partial_mean(const TailFit& fit, double upper) {
  if (!(upper > 0 && upper <= 1)) {
    throw DomainError("upper_partial_mean: tail fraction must lie in (0, 1]");
  }
  require_finite_mean(fit.gamma(), "upper_partial_mean");
  if (upper == 1.0) return fit.u + mean_excess(fit);

  const double u = fit.u;
  return std::visit(
      [&](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        const double g = q.gamma;
        if constexpr (std::is_same_v<T, Gpd>) {
          return u * upper +
                 q.sigma / g * (std::pow(upper, 1.0 - g) / (1.0 - g) - upper);
        } else if constexpr (std::is_same_v<T, Pareto>) {
          return u * std::pow(upper, 1.0 - g) / (1.0 - g);
        } else {
          // By parts: E[Y 1{Y > y_q}] = y_q S(y_q) + integral_{y_q}^inf S.
          const double yq = ppd_quantile(1.0 - upper, q);
          return u * (yq * upper + relative_tail_integral(fit.params, yq, 0.0));
        }
      },
      fit.params);
}

double mean_log(const TailFit& fit) {
  const double log_u = std::log(fit.u);
  return std::visit(
      [&](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) {
          // Z = (sigma/gamma)(e^{gamma R} - 1) with R ~ Exp(1), so
          // E[log(u + Z)] = log u + E[log1p(Z / u)].
          const double scale = q.sigma / (q.gamma * fit.u);
          auto f = [&](double r) {
            const double w = std::exp(-r);
            if (w == 0.0) return 0.0;
            const double gr = q.gamma * r;
            // log1p(scale * expm1(gr)) as a softplus of its log argument, so
            // large gr cannot overflow.
            const double s = std::log(scale) + gr + std::log1p(-std::exp(-gr));
            const double lz = s > 0 ? s + std::log1p(std::exp(-s))
                                    : std::log1p(std::exp(s));
            return lz * w;
          };
          return log_u + integrate_to_infinity(f, 0.0, kTailQuadrature).value;
        } else if constexpr (std::is_same_v<T, Pareto>) {
          return log_u + q.gamma;
        } else {
          return log_u + (1.0 - q.c) * q.gamma +
                 q.c * q.gamma / (1.0 + q.gamma * q.tau);
        }
      },
      fit.params);
}

double gini_integral(const TailFit& fit, double alpha) {
  require_finite_mean(fit.gamma(), "gini_integral");
  if (const auto* g = std::get_if<Gpd>(&fit.params)) {
    return g->sigma / (1.0 - g->gamma) - alpha * g->sigma / (2.0 - g->gamma);
  }
  return fit.u * relative_tail_integral(fit.params, 1.0, alpha);
}

}  // namespace tail_moments

}  // namespace tailineq
