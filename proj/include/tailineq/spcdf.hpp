#pragma once

#include <optional>

#include "tailineq/core.hpp"
#include "tailineq/tailfit.hpp"

namespace tailineq {

// Empirical distribution over X_{1,n}..X_{n-k,n} (mass 1/n each) joined to a
// fitted tail carrying the remaining mass alpha = k/n:
//
//   F(x) = #{i <= n-k : X_{i,n} <= x} / n          for x <= u
//   F(x) = 1 - alpha (1 - F_tail(t(x)))             for x > u
//
// where u = X_{n-k,n} and t(x) = x - u for a GPD tail or x / u for Pa/PPD.
// Without a tail (k = 0) this is the plain empirical distribution.
class SemiParamCdf {
 public:
  SemiParamCdf(Sample sample, std::optional<TailFit> tail);

  double operator()(double x) const { return cdf(x); }
  double cdf(double x) const;
  double sf(double x) const { return 1.0 - cdf(x); }

  const Sample& sample() const { return sample_; }
  const std::optional<TailFit>& tail() const { return tail_; }
  Eigen::Index n() const { return sample_.size(); }
  Eigen::Index k() const { return tail_ ? tail_->k : 0; }
  Eigen::Index body_size() const { return n() - k(); }
  double alpha() const;
  double threshold() const;

  // Body order statistics X_{1,n}..X_{n-k,n}.
  auto body() const { return sample_.values().head(body_size()); }

  // Maps between data units and the tail law's own coordinate.
  double to_tail_coordinate(double x) const;
  double from_tail_coordinate(double t) const;

 private:
  Sample sample_;
  std::optional<TailFit> tail_;
};

// Throws InconsistentFitError unless fit.u == X_{n-k,n} and fit.n == n.
SemiParamCdf build_sp_cdf(const Sample& s, const std::optional<TailFit>& fit);

// Left-continuous inverse. Body: X_{ceil(np),n}; tail: u + Q_tail(w) or
// u Q_tail(w) with w = (p - 1 + alpha) / alpha.
double sp_quantile(const SemiParamCdf& F, double p);

// Mean of the semi-parametric law:
//   (1/n) sum_{i<=n-k} X_{i,n} + alpha (u + E[tail excess])
// Throws InfiniteMeanError when the tail index is >= 1.
double sp_mean(const SemiParamCdf& F);

// Tail functionals in data units, each conditional on X > u. All require a
// tail and throw InfiniteMeanError where the moment diverges.
namespace tail_moments {

// E[X - u | X > u].
double mean_excess(const TailFit& fit);

// E[X 1{X > q} | X > u] for q the upper tail point carrying mass `upper`
// (fraction of the tail, in (0, 1]).
double upper_partial_mean(const TailFit& fit, double upper);

// E[log X | X > u].
double mean_log(const TailFit& fit);

// integral_u^inf S(x) (1 - alpha S(x)) dx with S the tail survival in data
// units; the tail part of int F (1 - F) dx divided by alpha.
double gini_integral(const TailFit& fit, double alpha);

}  // namespace tail_moments

}  // namespace tailineq
