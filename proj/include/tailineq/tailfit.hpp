#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailineq/core.hpp"
#include "tailineq/distributions.hpp"

namespace tailineq {

// Sorted, strictly positive observations.
class Sample {
 public:
  // Sorts the values; throws DomainError on empty input or non-positive /
  // non-finite values.
  explicit Sample(ArrayXd values, std::string source = {});
  explicit Sample(const std::vector<double>& values, std::string source = {});

  const ArrayXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  // 1-based order statistic X_{i,n}.
  double order_stat(Eigen::Index i) const { return values_(i - 1); }
  const std::string& source() const { return source_; }

  Sample scaled(double factor) const;

 private:
  ArrayXd values_;
  std::string source_;
};

struct Threshold {
  double u = 0;       // X_{n-k,n}
  Eigen::Index k = 0; // number of upper order statistics in the tail
};

inline constexpr Eigen::Index kMinExceedances = 5;
inline constexpr Eigen::Index kMinPpdExceedances = 10;

// k = floor(alpha n), u = X_{n-k,n}. Throws DomainError when k < 5 or k >= n.
Threshold select_threshold(const Sample& s, double alpha);

struct Exceedances {
  ArrayXd values;              // sorted ascending
  Eigen::Index dropped_ties = 0; // top-k points equal to u
};

// X_{n-k+i,n} - u for i = 1..k, zeros dropped.
Exceedances absolute_exceedances(const Sample& s, const Threshold& t);
// X_{n-k+i,n} / u for i = 1..k, ones dropped.
Exceedances relative_exceedances(const Sample& s, const Threshold& t);

// Thrown when no start reaches the optimizer's convergence test; carries the
// best iterate seen.
class FitError : public Error {
 public:
  FitError(const std::string& what, TailParams best, double best_loglik)
      : Error(what), best_(best), best_loglik_(best_loglik) {}
  const char* kind() const noexcept override { return "fit"; }
  const TailParams& best() const { return best_; }
  double best_log_likelihood() const { return best_loglik_; }

 private:
  TailParams best_;
  double best_loglik_;
};

template <typename Params>
struct FitResult {
  Params params{};
  double log_likelihood = 0;
  int iterations = 0;
  int start_index = 0;  // which deterministic start produced the optimum
  std::vector<std::string> warnings;
};

FitResult<Gpd> fit_gpd_mle(const ArrayXd& excesses);

// Closed form: gamma = mean(log ratios), the exact Pareto MLE.
Pareto fit_pareto_hill(const ArrayXd& ratios);
FitResult<Pareto> fit_pareto(const ArrayXd& ratios);

FitResult<Ppd> fit_ppd_mle(const ArrayXd& ratios);

struct TailFit {
  TailParams params;
  double u = 0;
  Eigen::Index k = 0;
  Eigen::Index n = 0;
  double log_likelihood = 0;
  Eigen::Index dropped_ties = 0;
  std::vector<std::string> warnings;

  TailFamily family() const { return family_of(params); }
  double alpha() const { return static_cast<double>(k) / static_cast<double>(n); }
  double gamma() const { return tail_gamma(params); }
};

// Threshold selection, exceedances in the family's own coordinate, and MLE.
TailFit fit_tail(const Sample& s, TailFamily family, double alpha);

// Exceedances in the coordinate the family is fitted in: absolute for GPD,
// relative for Pa and PPD.
Exceedances tail_exceedances(const Sample& s, const Threshold& t,
                             TailFamily family);

}  // namespace tailineq
