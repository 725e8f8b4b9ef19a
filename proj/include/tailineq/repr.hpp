#pragma once

#include <map>
#include <string>

#include "tailineq/core.hpp"
#include "tailineq/tailfit.hpp"

namespace tailineq {

// Representativeness of a sorted sample for a distribution, from the fitted
// cdf values F(X_{i,n}):
//
//   R = 1 - 12n / (4n^2 - 1) * sum_i (F(X_{i,n}) - (2i - 1) / (2n))^2
//
// R = 1 exactly at the uniform plotting positions, and 0 in the worst case
// where every F value is 0.
double bertino_index(const Eigen::Ref<const ArrayXd>& cdf_values);

template <typename Cdf>
double bertino_index(const Eigen::Ref<const ArrayXd>& sorted_values, Cdf&& cdf) {
  ArrayXd f(sorted_values.size());
  for (Eigen::Index i = 0; i < sorted_values.size(); ++i) f(i) = cdf(sorted_values(i));
  return bertino_index(f);
}

struct SelectionReport {
  std::map<TailFamily, double> scores;
  std::map<TailFamily, TailFit> fits;
  std::map<TailFamily, std::string> failures;
  TailFamily chosen = TailFamily::Pareto;
  Eigen::Index k = 0;
};

// Scores within this distance count as tied; ties go to Pa, then PPD, then GPD.
inline constexpr double kSelectionTieTolerance = 1e-9;

// Largest score wins; scores within the tie tolerance of the largest are
// resolved by that priority. NaN scores never win.
TailFamily choose_family(const std::map<TailFamily, double>& scores);

// Fits GPD to absolute and Pa/PPD to relative exceedances of the same top-k
// block, scores each against its own fit, and picks the largest score.
// Throws Error listing every family's failure if no fit succeeds.
SelectionReport select_tail_model(const Sample& s, double alpha);

}  // namespace tailineq
