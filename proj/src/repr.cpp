#include "tailineq/repr.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tailineq {

double bertino_index(const Eigen::Ref<const ArrayXd>& cdf_values) {
  const Eigen::Index n = cdf_values.size();
  if (n == 0) throw DomainError("bertino_index: empty input");
  const double dn = static_cast<double>(n);
  const ArrayXd positions =
      (2.0 * ArrayXd::LinSpaced(n, 1.0, dn) - 1.0) / (2.0 * dn);
  const double ss = (cdf_values - positions).square().sum();
  return 1.0 - 12.0 * dn / (4.0 * dn * dn - 1.0) * ss;
}

TailFamily choose_family(const std::map<TailFamily, double>& scores) {
  if (scores.empty()) throw DomainError("choose_family: no scores");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [family, score] : scores) best = std::max(best, score);
  for (TailFamily family : {TailFamily::Pareto, TailFamily::Ppd, TailFamily::Gpd}) {
    const auto it = scores.find(family);
    if (it != scores.end() && it->second >= best - kSelectionTieTolerance) return family;
  }
  throw DomainError("choose_family: no score within tolerance of the maximum");
}

SelectionReport select_tail_model(const Sample& s, double alpha) {
  const Threshold t = select_threshold(s, alpha);
  SelectionReport report;
  report.k = t.k;

  for (TailFamily family : {TailFamily::Gpd, TailFamily::Pareto, TailFamily::Ppd}) {
    try {
      TailFit fit = fit_tail(s, family, alpha);
      const Exceedances ex = tail_exceedances(s, t, family);
      report.scores[family] = bertino_index(
          ex.values, [&](double x) { return tail_cdf(x, fit.params); });
      report.fits.emplace(family, std::move(fit));
    } catch (const Error& e) {
      report.failures[family] = e.what();
    }
  }

  if (report.scores.empty()) {
    std::ostringstream os;
    os << "select_tail_model: every tail fit failed";
    for (const auto& [family, why] : report.failures) {
      os << "; " << to_string(family) << ": " << why;
    }
    throw Error(os.str());
  }

  report.chosen = choose_family(report.scores);
  return report;
}

}  // namespace tailineq
