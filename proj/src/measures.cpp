#include "tailineq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailineq {
namespace {

double as_double(Eigen::Index i) { return static_cast<double>(i); }

// sum_{i=1}^{m-1} (i/n)(1 - i/n)(X_{i+1,n} - X_{i,n}): the integral of
// F_n (1 - F_n) over [X_{1,n}, X_{m,n}].
double gini_body_sum(const ArrayXd& x, Eigen::Index n, Eigen::Index m) {
  double sum = 0;
  const double dn = as_double(n);
  for (Eigen::Index i = 1; i < m; ++i) {
    const double f = as_double(i) / dn;
    sum += f * (1.0 - f) * (x(i) - x(i - 1));
  }
  return sum;
}

double body_mean_log(const SemiParamCdf& F) {
  return F.body().log().sum() / as_double(F.n());
}

void require_dispersion_input(Eigen::Index n, const char* what) {
  if (n < 2) throw DegenerateDataError(std::string(what) + ": need n >= 2");
}

Eigen::Index quintile_rank(Eigen::Index n) {
  return static_cast<Eigen::Index>(std::ceil(0.2 * as_double(n) - 1e-9));
}

std::vector<std::string> tail_diagnostics(const SemiParamCdf& F) {
  std::vector<std::string> out;
  if (!F.tail()) return out;
  const double g = F.tail()->gamma();
  if (g > kGammaWarning && g < 1.0) {
    std::ostringstream os;
    os << "tail index " << g << " is close to 1; the estimate is unstable";
    out.push_back(os.str());
  }
  return out;
}

Method method_of(const SemiParamCdf& F) {
  return F.tail() ? sp_method(F.tail()->family()) : Method::NP;
}

// Shared core of the GE0 / A1 estimators: (mean, E[log X]).
struct LogMoments {
  double mean;
  double mean_log;
};

LogMoments log_moments(const SemiParamCdf& F) {
  const double mu = sp_mean(F);
  double ml = body_mean_log(F);
  if (F.tail()) ml += F.alpha() * tail_moments::mean_log(*F.tail());
  return {mu, ml};
}

}  // namespace

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Gini: return "gini";
    case Measure::GE0: return "ge0";
    case Measure::A1: return "a1";
    case Measure::QSR: return "qsr";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::NP: return "NP";
    case Method::SpGpd: return "SP-GPD";
    case Method::SpPareto: return "SP-Pa";
    case Method::SpPpd: return "SP-PPD";
  }
  return "?";
}

Method sp_method(TailFamily f) {
  switch (f) {
    case TailFamily::Gpd: return Method::SpGpd;
    case TailFamily::Pareto: return Method::SpPareto;
    case TailFamily::Ppd: return Method::SpPpd;
  }
  return Method::NP;
}

// ---------------------------------------------------------------------------
// Semi-parametric estimators. The NP versions evaluate these on the
// tail-free distribution so both share one arithmetic path.

MeasureValue gini_sp(const SemiParamCdf& F) {
  require_dispersion_input(F.n(), "gini");
  const ArrayXd& x = F.sample().values();
  const Eigen::Index n = F.n();
  const double mu = sp_mean(F);

  MeasureValue out{Measure::Gini, method_of(F), 0, tail_diagnostics(F)};
  if (!F.tail()) {
    out.value = gini_body_sum(x, n, n) / mu;
    return out;
  }

  const TailFit& tail = *F.tail();
  const Eigen::Index k = tail.k;
  const double body = gini_body_sum(x, n, n - k) / mu;
  if (const auto* g = std::get_if<Gpd>(&tail.params)) {
    // Closed form for a GPD tail:
    //   k sigma [2n - k - gamma (n - k)] / (n^2 mu (1 - gamma)(2 - gamma))
    const double dn = as_double(n);
    const double dk = as_double(k);
    out.value = body + dk * g->sigma * (2.0 * dn - dk - g->gamma * (dn - dk)) /
                           (dn * dn * mu * (1.0 - g->gamma) * (2.0 - g->gamma));
  } else {
    out.value = body + F.alpha() * tail_moments::gini_integral(tail, F.alpha()) / mu;
  }
  return out;
}

MeasureValue ge0_sp(const SemiParamCdf& F) {
  require_dispersion_input(F.n(), "ge0");
  const LogMoments m = log_moments(F);
  return {Measure::GE0, method_of(F), std::log(m.mean) - m.mean_log,
          tail_diagnostics(F)};
}

MeasureValue a1_sp(const SemiParamCdf& F) {
  require_dispersion_input(F.n(), "a1");
  const LogMoments m = log_moments(F);
  return {Measure::A1, method_of(F), 1.0 - std::exp(m.mean_log) / m.mean,
          tail_diagnostics(F)};
}

MeasureValue qsr_sp(const SemiParamCdf& F) {
  const Eigen::Index n = F.n();
  if (n < 5) throw DegenerateDataError("qsr: need n >= 5");
  const ArrayXd& x = F.sample().values();
  const Eigen::Index m = quintile_rank(n);
  const Eigen::Index body = F.body_size();
  if (m > body) throw DomainError("qsr: bottom quintile reaches into the tail");

  const double dn = as_double(n);
  const double bottom = x.head(m).sum() / dn;

  double top;
  if (!F.tail()) {
    top = x.tail(m).sum() / dn;
  } else if (m > F.k()) {
    // Whole tail plus the highest body ranks n-m+1..n-k.
    const Eigen::Index from_body = m - F.k();
    top = x.segment(body - from_body, from_body).sum() / dn +
          F.alpha() * tail_moments::upper_partial_mean(*F.tail(), 1.0);
  } else {
    const double upper = (as_double(m) / dn) / F.alpha();
    top = F.alpha() * tail_moments::upper_partial_mean(*F.tail(), upper);
  }
  if (!(bottom > 0)) throw DegenerateDataError("qsr: bottom quintile share is zero");
  return {Measure::QSR, method_of(F), top / bottom, tail_diagnostics(F)};
}

MeasureValue gini_np(const Sample& s) { return gini_sp(SemiParamCdf(s, std::nullopt)); }
MeasureValue ge0_np(const Sample& s) { return ge0_sp(SemiParamCdf(s, std::nullopt)); }
MeasureValue a1_np(const Sample& s) { return a1_sp(SemiParamCdf(s, std::nullopt)); }
MeasureValue qsr_np(const Sample& s) { return qsr_sp(SemiParamCdf(s, std::nullopt)); }

MeasureValue estimate(Measure m, const SemiParamCdf& F) {
  switch (m) {
    case Measure::Gini: return gini_sp(F);
    case Measure::GE0: return ge0_sp(F);
    case Measure::A1: return a1_sp(F);
    case Measure::QSR: return qsr_sp(F);
  }
  throw DomainError("estimate: unknown measure");
}

MeasureValue estimate(Measure m, const Sample& s) {
  return estimate(m, SemiParamCdf(s, std::nullopt));
}

// ---------------------------------------------------------------------------

namespace {
double sorted_median(const ArrayXd& v) {
  const Eigen::Index n = v.size();
  if (n % 2 == 1) return v(n / 2);
  return 0.5 * (v(n / 2 - 1) + v(n / 2));
}
}  // namespace

DescriptiveStats descriptive_stats(const Sample& s, bool scale_mad) {
  const ArrayXd& v = s.values();
  DescriptiveStats d;
  d.n = s.size();
  d.median = sorted_median(v);
  ArrayXd dev = (v - d.median).abs();
  std::sort(dev.begin(), dev.end());
  d.mad = sorted_median(dev) * (scale_mad ? kMadConsistency : 1.0);
  d.max = v(v.size() - 1);
  return d;
}

}  // namespace tailineq
