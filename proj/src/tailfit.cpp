#include "tailineq/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "tailineq/optimize.hpp"

namespace tailineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A start only replaces the incumbent when strictly better by this margin,
// so the lowest start index wins ties.
constexpr double kStartTieMargin = 1e-12;

void require_nondegenerate(const ArrayXd& v, Eigen::Index min_size,
                           const char* what) {
  if (v.size() < min_size) {
    std::ostringstream os;
    os << what << ": need at least " << min_size << " values, got " << v.size();
    throw DegenerateDataError(os.str());
  }
  if (v.maxCoeff() == v.minCoeff()) {
    throw DegenerateDataError(std::string(what) + ": all values are equal");
  }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Search box for tau. Without it the likelihood has a ridge as tau -> 0 with
// c -> -infinity (c tau finite), where the parameters stop meaning anything.
constexpr double kPpdTauMin = 0.05;
constexpr double kPpdTauMax = 20.0;

struct PpdMap {
  // theta = (log gamma, z_c, z_tau) with
  //   c = lo + (1 - lo) sigmoid(z_c),  log tau = log tau_min + span sigmoid(z_tau)
  static double tau_of(double z) {
    const double a = std::log(kPpdTauMin), b = std::log(kPpdTauMax);
    return std::exp(a + (b - a) * sigmoid(z));
  }
  static Ppd to_params(const VectorXd& theta) {
    const double gamma = std::exp(theta(0));
    const double tau = tau_of(theta(2));
    const double lo = ppd_c_lower_bound(gamma, tau);
    return {gamma, lo + (1.0 - lo) * sigmoid(theta(1)), tau};
  }
  static VectorXd to_theta(const Ppd& p) {
    const double lo = ppd_c_lower_bound(p.gamma, p.tau);
    const double a = std::log(kPpdTauMin), b = std::log(kPpdTauMax);
    VectorXd theta(3);
    theta << std::log(p.gamma), logit((p.c - lo) / (1.0 - lo)),
        logit((std::log(p.tau) - a) / (b - a));
    return theta;
  }
};

// Score of the PPD log-likelihood in (gamma, c, tau). With a = 1/gamma,
// w = y^-tau and B = (1-c) a + c (a + tau) w the log density is
// log B - (a + 1) log y.
Eigen::Vector3d ppd_score(const Ppd& p, const ArrayXd& y) {
  const double a = 1.0 / p.gamma;
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (double v : y) {
    const double l = std::log(v);
    const double w = std::exp(-p.tau * l);
    const double b = (1.0 - p.c) * a + p.c * (a + p.tau) * w;
    g(0) += -a * a * ((1.0 - p.c + p.c * w) / b - l);
    g(1) += (-a + (a + p.tau) * w) / b;
    g(2) += p.c * w * (1.0 - (a + p.tau) * l) / b;
  }
  return g;
}

// Newton iterations solving score(theta) = 0, with the Hessian taken by
// central differences of the analytic score. Returns nullopt when the
// Hessian is not negative definite or an iterate leaves the feasible set.
template <int D, typename Score, typename Feasible>
std::optional<Eigen::Matrix<double, D, 1>> newton_on_score(Eigen::Matrix<double, D, 1> theta,
                                                           Score&& score,
                                                           Feasible&& feasible) {
  using Vec = Eigen::Matrix<double, D, 1>;
  using Mat = Eigen::Matrix<double, D, D>;
  for (int iter = 0; iter < 50; ++iter) {
    if (!feasible(theta)) return std::nullopt;
    const Vec g = score(theta);
    Mat h;
    for (int j = 0; j < D; ++j) {
      const double step = 1e-6 * std::max(1.0, std::abs(theta(j)));
      Vec hi = theta, lo = theta;
      hi(j) += step;
      lo(j) -= step;
      if (!feasible(hi) || !feasible(lo)) return std::nullopt;
      h.col(j) = (score(hi) - score(lo)) / (2.0 * step);
    }
    h = 0.5 * (h + h.transpose()).eval();
    const Eigen::LDLT<Mat> ldlt(-h);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
    const Vec delta = ldlt.solve(g);
    theta += delta;
    if (delta.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + theta.cwiseAbs().maxCoeff())) break;
  }
  if (!feasible(theta)) return std::nullopt;
  return theta;
}

bool tau_in_range(const Ppd& p) { return p.tau > kPpdTauMin && p.tau < kPpdTauMax; }

// c sits this far (relative) inside its lower bound when the optimum is on
// the boundary, which the open constraint excludes.
constexpr double kPpdBoundaryInset = 1e-12;

// The simplex only resolves the flat top of the likelihood to ~1e-8. Solving
// the score equations pins the optimum to rounding level, so refits of
// rescaled data (whose ratios differ in the last bit) land on the same
// parameters. Interior optima are solved in (gamma, c, tau); optima on the
// lower c bound are solved in (gamma, tau) with c tied to the bound.
std::optional<Ppd> polish_ppd(const Ppd& start, const ArrayXd& y) {
  const auto interior = newton_on_score<3>(
      Eigen::Vector3d(start.gamma, start.c, start.tau),
      [&](const Eigen::Vector3d& t) { return ppd_score(Ppd{t(0), t(1), t(2)}, y); },
      [](const Eigen::Vector3d& t) {
        const Ppd p{t(0), t(1), t(2)};
        return ppd_density_positive(p) && tau_in_range(p);
      });
  if (interior) return Ppd{(*interior)(0), (*interior)(1), (*interior)(2)};

  const double lo = ppd_c_lower_bound(start.gamma, start.tau);
  if (start.c - lo > 1e-4 * (1.0 + std::abs(lo))) return std::nullopt;

  auto on_bound = [](const Eigen::Vector2d& t) {
    return Ppd{t(0), ppd_c_lower_bound(t(0), t(1)) * (1.0 - kPpdBoundaryInset), t(1)};
  };
  const auto boundary = newton_on_score<2>(
      Eigen::Vector2d(start.gamma, start.tau),
      [&](const Eigen::Vector2d& t) {
        const double g = t(0), tau = t(1);
        // d(bound)/d(gamma, tau): -1/tau binds for gamma <= 1, -1/(gamma tau) above.
        const double dg = g <= 1.0 ? 0.0 : 1.0 / (g * g * tau);
        const double dt = g <= 1.0 ? 1.0 / (tau * tau) : 1.0 / (g * tau * tau);
        const Eigen::Vector3d s = ppd_score(on_bound(t), y);
        const double k = 1.0 - kPpdBoundaryInset;
        return Eigen::Vector2d(s(0) + s(1) * dg * k, s(2) + s(1) * dt * k);
      },
      [&](const Eigen::Vector2d& t) {
        if (!(t(0) > 0 && t(1) > 0)) return false;
        const Ppd p = on_bound(t);
        return ppd_density_positive(p) && tau_in_range(p);
      });
  if (boundary) return on_bound(*boundary);
  return std::nullopt;
}

}  // namespace

Sample::Sample(ArrayXd values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.size() == 0) throw DomainError("Sample: no observations");
  if (!values_.allFinite() || (values_ <= 0).any()) {
    throw DomainError("Sample: observations must be finite and strictly positive");
  }
  std::sort(values_.begin(), values_.end());
}

Sample::Sample(const std::vector<double>& values, std::string source)
    : Sample(ArrayXd(Eigen::Map<const ArrayXd>(values.data(),
                                               static_cast<Eigen::Index>(values.size()))),
             std::move(source)) {}

Sample Sample::scaled(double factor) const {
  return Sample(ArrayXd(values_ * factor), source_);
}

Threshold select_threshold(const Sample& s, double alpha) {
  if (!(alpha > 0 && alpha < 1)) {
    throw DomainError("select_threshold: alpha must lie in (0, 1)");
  }
  const Eigen::Index n = s.size();
  // The small offset keeps products such as 0.29 * 100 from flooring to 28.
  const auto k = static_cast<Eigen::Index>(
      std::floor(alpha * static_cast<double>(n) + 1e-9));
  if (k < kMinExceedances) {
    std::ostringstream os;
    os << "select_threshold: k = " << k << " exceedances, need at least "
       << kMinExceedances;
    throw DomainError(os.str());
  }
  if (k >= n) throw DomainError("select_threshold: k must be below n");
  return {s.order_stat(n - k), k};
}

Exceedances absolute_exceedances(const Sample& s, const Threshold& t) {
  const auto top = s.values().tail(t.k);
  Exceedances out;
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(t.k));
  for (double x : top) {
    const double e = x - t.u;
    if (e > 0) kept.push_back(e);
    else ++out.dropped_ties;
  }
  out.values = Eigen::Map<const ArrayXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  return out;
}

Exceedances relative_exceedances(const Sample& s, const Threshold& t) {
  if (!(t.u > 0)) throw DomainError("relative_exceedances: threshold must be positive");
  const auto top = s.values().tail(t.k);
  Exceedances out;
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(t.k));
  for (double x : top) {
    const double r = x / t.u;
    if (r > 1) kept.push_back(r);
    else ++out.dropped_ties;
  }
  out.values = Eigen::Map<const ArrayXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  return out;
}

Exceedances tail_exceedances(const Sample& s, const Threshold& t,
                             TailFamily family) {
  return family == TailFamily::Gpd ? absolute_exceedances(s, t)
                                   : relative_exceedances(s, t);
}

// ---------------------------------------------------------------------------

FitResult<Gpd> fit_gpd_mle(const ArrayXd& excesses) {
  require_nondegenerate(excesses, kMinExceedances, "fit_gpd_mle");
  if ((excesses <= 0).any()) {
    throw DomainError("fit_gpd_mle: excesses must be strictly positive");
  }

  auto negloglik = [&](const VectorXd& theta) {
    const Gpd p{std::exp(theta(0)), std::exp(theta(1))};
    const double ll = log_likelihood(p, excesses);
    return std::isfinite(ll) ? -ll : kInf;
  };

  // Starts span light to heavy tails, each matched to the sample mean
  // through E[X] = sigma / (1 - gamma); the last one is the moment estimate.
  const double mean = excesses.mean();
  const double var = (excesses - mean).square().sum() /
                     static_cast<double>(excesses.size() - 1);
  const double mom_gamma = std::clamp(0.5 * (1.0 - mean * mean / var), 0.05, 0.9);
  const double start_gammas[] = {0.1, 0.3, 0.6, 0.9, mom_gamma};

  FitResult<Gpd> best;
  best.log_likelihood = -kInf;
  NelderMeadResult best_run;
  bool have = false;
  int index = 0;
  for (double g0 : start_gammas) {
    VectorXd theta(2);
    theta << std::log(mean * (1.0 - std::min(g0, 0.9))), std::log(g0);
    NelderMeadResult run = nelder_mead(negloglik, theta);
    if (!have || -run.f > best.log_likelihood + kStartTieMargin) {
      best.params = {std::exp(run.x(0)), std::exp(run.x(1))};
      best.log_likelihood = -run.f;
      best.iterations = run.iterations;
      best.start_index = index;
      best_run = run;
      have = true;
    }
    ++index;
  }

  if (!best_run.converged) {
    throw FitError("fit_gpd_mle: optimizer did not converge", best.params,
                   best.log_likelihood);
  }
  if (best.params.gamma < 1e-6) {
    best.warnings.push_back("gamma estimate at the lower boundary; tail looks lighter than any power law");
  }
  return best;
}

Pareto fit_pareto_hill(const ArrayXd& ratios) {
  if (ratios.size() == 0) throw DomainError("fit_pareto_hill: empty input");
  if ((ratios <= 1).any()) {
    throw DomainError("fit_pareto_hill: relative exceedances must exceed 1");
  }
  return {ratios.log().mean()};
}

FitResult<Pareto> fit_pareto(const ArrayXd& ratios) {
  require_nondegenerate(ratios, kMinExceedances, "fit_pareto");
  const Pareto p = fit_pareto_hill(ratios);
  return {p, log_likelihood(p, ratios), 0, 0, {}};
}

FitResult<Ppd> fit_ppd_mle(const ArrayXd& ratios) {
  require_nondegenerate(ratios, kMinPpdExceedances, "fit_ppd_mle");
  const Pareto hill = fit_pareto_hill(ratios);

  auto negloglik = [&](const VectorXd& theta) {
    const Ppd p = PpdMap::to_params(theta);
    if (!ppd_density_positive(p)) return kInf;
    const double ll = log_likelihood(p, ratios);
    return std::isfinite(ll) ? -ll : kInf;
  };

  FitResult<Ppd> best;
  best.log_likelihood = -kInf;
  NelderMeadResult best_run;
  bool have = false;
  int index = 0;
  for (double c0 : {-0.25, 0.0, 0.25}) {
    for (double tau0 : {0.5, 1.0, 2.0}) {
      const Ppd start{hill.gamma, c0, tau0};
      if (!ppd_density_positive(start)) continue;
      NelderMeadResult run = nelder_mead(negloglik, PpdMap::to_theta(start));
      if (!have || -run.f > best.log_likelihood + kStartTieMargin) {
        best.params = PpdMap::to_params(run.x);
        best.log_likelihood = -run.f;
        best.iterations = run.iterations;
        best.start_index = index;
        best_run = run;
        have = true;
      }
      ++index;
    }
  }

  if (best_run.converged) {
    if (const auto polished = polish_ppd(best.params, ratios)) {
      const double ll = log_likelihood(*polished, ratios);
      // Accept unless the likelihood drops beyond evaluation noise.
      if (ll >= best.log_likelihood - 1e-9 * std::max(1.0, std::abs(best.log_likelihood))) {
        best.params = *polished;
        best.log_likelihood = ll;
      }
    }
  }

  // The c = 0 start sits at the Pareto MLE and the simplex never accepts a
  // worse incumbent, so this only trips on a broken objective.
  const double pareto_ll = log_likelihood(hill, ratios);
  if (best.log_likelihood < pareto_ll - 1e-8) {
    throw FitError("fit_ppd_mle: fit is worse than the nested Pareto fit",
                   best.params, best.log_likelihood);
  }
  if (!best_run.converged) {
    throw FitError("fit_ppd_mle: optimizer did not converge", best.params,
                   best.log_likelihood);
  }
  const Ppd& p = best.params;
  const double lo = ppd_c_lower_bound(p.gamma, p.tau);
  if (p.c - lo < 1e-4 || 1.0 - p.c < 1e-4) {
    best.warnings.push_back("c estimate within 1e-4 of a constraint bound");
  }
  if (std::abs(std::log(p.tau / kPpdTauMin)) < 1e-3 ||
      std::abs(std::log(p.tau / kPpdTauMax)) < 1e-3) {
    best.warnings.push_back("tau estimate at the edge of its search range [0.05, 20]; "
                            "second-order parameters are not identified");
  }
  return best;
}

TailFit fit_tail(const Sample& s, TailFamily family, double alpha) {
  const Threshold t = select_threshold(s, alpha);
  const Exceedances ex = tail_exceedances(s, t, family);

  TailFit fit;
  fit.u = t.u;
  fit.k = t.k;
  fit.n = s.size();
  fit.dropped_ties = ex.dropped_ties;
  if (ex.dropped_ties > 0) {
    fit.warnings.push_back(std::to_string(ex.dropped_ties) +
                           " exceedance(s) tied with the threshold were dropped");
  }

  auto absorb = [&fit](auto result) {
    fit.params = result.params;
    fit.log_likelihood = result.log_likelihood;
    fit.warnings.insert(fit.warnings.end(), result.warnings.begin(),
                        result.warnings.end());
  };
  switch (family) {
    case TailFamily::Gpd: absorb(fit_gpd_mle(ex.values)); break;
    case TailFamily::Pareto: absorb(fit_pareto(ex.values)); break;
    case TailFamily::Ppd: absorb(fit_ppd_mle(ex.values)); break;
  }
  return fit;
}

}  // namespace tailineq
