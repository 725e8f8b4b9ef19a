#pragma once

#include <string>
#include <vector>

#include "tailineq/core.hpp"
#include "tailineq/spcdf.hpp"
#include "tailineq/tailfit.hpp"

namespace tailineq {

enum class Measure { Gini, GE0, A1, QSR };
enum class Method { NP, SpGpd, SpPareto, SpPpd };

std::string to_string(Measure m);
std::string to_string(Method m);
Method sp_method(TailFamily f);

struct MeasureValue {
  Measure measure;
  Method method;
  double value = 0;
  std::vector<std::string> diagnostics;
};

// Non-parametric estimators on the empirical distribution.
MeasureValue gini_np(const Sample& s);
MeasureValue ge0_np(const Sample& s);
MeasureValue a1_np(const Sample& s);
MeasureValue qsr_np(const Sample& s);

// Plug-in estimators on the semi-parametric distribution. With no tail they
// reproduce the NP values exactly. Throw InfiniteMeanError when the fitted
// tail index is >= 1.
MeasureValue gini_sp(const SemiParamCdf& F);
MeasureValue ge0_sp(const SemiParamCdf& F);
MeasureValue a1_sp(const SemiParamCdf& F);
MeasureValue qsr_sp(const SemiParamCdf& F);

MeasureValue estimate(Measure m, const Sample& s);
MeasureValue estimate(Measure m, const SemiParamCdf& F);

struct DescriptiveStats {
  Eigen::Index n = 0;
  double median = 0;
  double mad = 0;
  double max = 0;
};

// Median averages the two central order statistics for even n. MAD is the
// raw median absolute deviation unless scale_mad is set (factor 1.4826).
DescriptiveStats descriptive_stats(const Sample& s, bool scale_mad = false);

inline constexpr double kMadConsistency = 1.4826;
// Diagnostic threshold for tail indices close to the infinite-mean boundary.
inline constexpr double kGammaWarning = 0.95;

}  // namespace tailineq
