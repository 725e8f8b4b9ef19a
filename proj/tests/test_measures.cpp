#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sp_oracles.hpp"
#include "tailineq/measures.hpp"
#include "tailineq/random.hpp"

using namespace tailineq;

namespace {

constexpr Measure kAllMeasures[] = {Measure::Gini, Measure::GE0, Measure::A1, Measure::QSR};
constexpr TailFamily kAllFamilies[] = {TailFamily::Gpd, TailFamily::Pareto, TailFamily::Ppd};

std::vector<double> iota_values(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1.0;
  return v;
}

TailFit manual_fit(const Sample& s, double alpha, TailParams params) {
  const Threshold t = select_threshold(s, alpha);
  TailFit f;
  f.params = params;
  f.u = t.u;
  f.k = t.k;
  f.n = s.size();
  return f;
}

std::vector<double> random_sample(std::mt19937_64& rng, int n) {
  std::lognormal_distribution<double> d(0.0, 1.5);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(GiniNp, Examples) {
  EXPECT_EQ(gini_np(Sample(std::vector<double>(10, 3.7))).value, 0.0);
  EXPECT_NEAR(gini_np(Sample(std::vector<double>{1, 3})).value, 0.25, 1e-15);
  EXPECT_NEAR(gini_np(Sample(std::vector<double>{1, 2, 3, 4})).value,
              oracle::gini_pairwise({1, 2, 3, 4}), 1e-15);
  EXPECT_NEAR(gini_np(Sample(std::vector<double>{1, 2, 3, 4})).value, 0.25, 1e-15);
  EXPECT_THROW(gini_np(Sample(std::vector<double>{1})), DegenerateDataError);
}

TEST(GiniNp, MatchesPairwiseDefinition) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 50);
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = random_sample(rng, size(rng));
    EXPECT_NEAR(gini_np(Sample(v)).value, oracle::gini_pairwise(v), 1e-12);
  }
}

TEST(GiniNp, ReplicationInvariant) {
  std::mt19937_64 rng(7);
  const auto v = random_sample(rng, 40);
  for (int m : {2, 3, 10}) {
    std::vector<double> rep;
    for (int j = 0; j < m; ++j) rep.insert(rep.end(), v.begin(), v.end());
    // The pairwise form is exactly invariant under replication.
    EXPECT_NEAR(oracle::gini_pairwise(rep), oracle::gini_pairwise(v), 1e-13);
    EXPECT_NEAR(gini_np(Sample(rep)).value, gini_np(Sample(v)).value, 1e-12);
  }
}

TEST(Ge0Np, Examples) {
  EXPECT_NEAR(ge0_np(Sample(std::vector<double>(7, 2.0))).value, 0.0, 1e-15);
  const double e = std::exp(1.0);
  EXPECT_NEAR(ge0_np(Sample(std::vector<double>{1, e})).value,
              std::log((1 + e) / 2) - 0.5, 1e-15);
  EXPECT_NEAR(ge0_np(Sample(std::vector<double>{1, e})).value, 0.12011, 1e-5);
}

TEST(A1Np, Examples) {
  EXPECT_NEAR(a1_np(Sample(std::vector<double>(7, 2.0))).value, 0.0, 1e-15);
  EXPECT_NEAR(a1_np(Sample(std::vector<double>{1, 4})).value, 0.2, 1e-15);
}

TEST(QsrNp, Examples) {
  EXPECT_EQ(qsr_np(Sample(std::vector<double>(5, 9.0))).value, 1.0);
  EXPECT_EQ(qsr_np(Sample(std::vector<double>{1, 2, 3, 4, 5})).value, 5.0);
  // n = 12: ceil(2.4) = 3 ranks each side.
  EXPECT_DOUBLE_EQ(qsr_np(Sample(iota_values(12))).value, (10 + 11 + 12) / 6.0);
  EXPECT_THROW(qsr_np(Sample(std::vector<double>{1, 2, 3, 4})), DegenerateDataError);
}

TEST(AtkinsonEntropyIdentity, HoldsForEveryMethod) {
  const Sample s(simulate(Gpd{1.0, 0.4}, 2000, 55));
  auto check = [](const SemiParamCdf& F) {
    const double ge0 = ge0_sp(F).value;
    const double a1 = a1_sp(F).value;
    EXPECT_NEAR(a1, 1.0 - std::exp(-ge0), 1e-12);
  };
  check(SemiParamCdf(s, std::nullopt));
  for (TailFamily fam : kAllFamilies) check(build_sp_cdf(s, fit_tail(s, fam, 0.1)));
}

TEST(SpReduction, NoTailReproducesNpExactly) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const Sample s(random_sample(rng, 30 + rep * 17));
    const SemiParamCdf F = build_sp_cdf(s, std::nullopt);
    for (Measure m : kAllMeasures) {
      EXPECT_EQ(estimate(m, F).value, estimate(m, s).value) << to_string(m);
    }
  }
}

TEST(GiniSp, PureParetoLaw) {
  // No body: u = 1 carries the whole law (alpha = 1).
  for (double g : {0.2, 0.5, 0.8}) {
    TailFit fit;
    fit.params = Pareto{g};
    fit.u = 1.0;
    fit.k = fit.n = 1;
    const double mu = 1.0 / (1.0 - g);
    EXPECT_NEAR(tail_moments::gini_integral(fit, 1.0) / mu, g / (2.0 - g), 1e-10);
  }
}

TEST(GiniSp, GpdClosedFormMatchesQuadrature) {
  for (double g : {0.2, 0.4, 0.6, 0.75}) {
    const Sample s(simulate(Gpd{1.0, g}, 3000, 100 + static_cast<int>(g * 10)));
    const SemiParamCdf F = build_sp_cdf(s, fit_tail(s, TailFamily::Gpd, 0.1));
    const double expected = oracle::sp_gini(F);
    EXPECT_NEAR(gini_sp(F).value, expected, 1e-6 * expected) << "gamma = " << g;
  }
}

TEST(GiniSp, PowerTailsMatchQuadrature) {
  const Sample s(simulate(Pareto{0.45}, 4000, 31));
  for (TailFamily fam : {TailFamily::Pareto, TailFamily::Ppd}) {
    const SemiParamCdf F = build_sp_cdf(s, fit_tail(s, fam, 0.1));
    const double expected = oracle::sp_gini(F);
    EXPECT_NEAR(gini_sp(F).value, expected, 1e-8 * expected) << to_string(fam);
  }
}

TEST(Ge0Sp, MatchesQuadrature) {
  const Sample s(simulate(Gpd{2.0, 0.3}, 3000, 41));
  for (TailFamily fam : kAllFamilies) {
    const SemiParamCdf F = build_sp_cdf(s, fit_tail(s, fam, 0.1));
    const double expected = std::log(oracle::sp_mean(F)) - oracle::sp_mean_log(F);
    EXPECT_NEAR(ge0_sp(F).value, expected, 1e-8 * expected) << to_string(fam);
  }
}

TEST(QsrSp, TopQuintileMixesBodyAndTail) {
  // n = 100, alpha = 0.1: m = 20 > k = 10, so the top quintile is ranks
  // 81..90 from the body plus the whole tail.
  const Sample s(iota_values(100));
  const TailFit fit = manual_fit(s, 0.1, Pareto{0.5});
  const SemiParamCdf F = build_sp_cdf(s, fit);
  const double top = (81 + 90) * 10 / 2.0 / 100.0 + 0.1 * 90.0 / (1.0 - 0.5);
  const double bottom = (1 + 20) * 20 / 2.0 / 100.0;
  EXPECT_NEAR(qsr_sp(F).value, top / bottom, 1e-12);
}

TEST(QsrSp, TopQuintileInsideTail) {
  // alpha = 0.3: the top 20% is the upper two thirds of the tail mass.
  const Sample s(iota_values(100));
  const Pareto p{0.5};
  const SemiParamCdf F = build_sp_cdf(s, manual_fit(s, 0.3, p));
  const double q = 70.0 * pareto_quantile(1.0 - 2.0 / 3.0, p);
  // E[X 1{X > q}] / P(X > u) for Pa: q S(q) + int_q^inf S.
  const double partial = oracle::integrate_log_scale(
      [&](double x) { return pareto_sf(x / 70.0, p); }, q) + q * (2.0 / 3.0);
  const double bottom = (1 + 20) * 20 / 2.0 / 100.0;
  EXPECT_NEAR(qsr_sp(F).value, 0.3 * partial / bottom, 1e-9);
}

TEST(MeasureSp, InfiniteMeanIsATypedError) {
  const Sample s(iota_values(100));
  for (const TailParams p : {TailParams{Gpd{1.0, 1.2}}, TailParams{Pareto{1.0}}}) {
    const SemiParamCdf F = build_sp_cdf(s, manual_fit(s, 0.1, p));
    for (Measure m : kAllMeasures) {
      EXPECT_THROW(estimate(m, F), InfiniteMeanError) << to_string(m);
    }
  }
}

TEST(MeasureSp, NearUnitIndexCarriesDiagnostic) {
  const Sample s(iota_values(100));
  const SemiParamCdf F = build_sp_cdf(s, manual_fit(s, 0.1, Pareto{0.97}));
  const auto v = gini_sp(F);
  EXPECT_FALSE(v.diagnostics.empty());
  EXPECT_TRUE(std::isfinite(v.value));
  const auto quiet = gini_sp(build_sp_cdf(s, manual_fit(s, 0.1, Pareto{0.5})));
  EXPECT_TRUE(quiet.diagnostics.empty());
}

TEST(MeasureRanges, HoldOnSimulatedData) {
  const Sample s(simulate(Pareto{0.6}, 5000, 77));
  std::vector<SemiParamCdf> cdfs{SemiParamCdf(s, std::nullopt)};
  for (TailFamily fam : kAllFamilies) cdfs.push_back(build_sp_cdf(s, fit_tail(s, fam, 0.1)));
  for (const auto& F : cdfs) {
    const double gini = gini_sp(F).value, ge0 = ge0_sp(F).value, a1 = a1_sp(F).value;
    EXPECT_GE(gini, 0.0);
    EXPECT_LT(gini, 1.0);
    EXPECT_GE(ge0, 0.0);
    EXPECT_GE(a1, 0.0);
    EXPECT_LT(a1, 1.0);
    EXPECT_GE(qsr_sp(F).value, 1.0);
  }
}

TEST(ScaleInvariance, AllMeasures) {
  const Sample s(simulate(Gpd{1.0, 0.4}, 2000, 13));
  for (double lambda : {0.001, 1000.0}) {
    const Sample t = s.scaled(lambda);
    for (Measure m : kAllMeasures) {
      const double a = estimate(m, s).value, b = estimate(m, t).value;
      // Scaling by a non-power of two rounds each value once.
      EXPECT_NEAR(a, b, 1e-12 * a) << "NP " << to_string(m);
      for (TailFamily fam : kAllFamilies) {
        const double sa = estimate(m, build_sp_cdf(s, fit_tail(s, fam, 0.1))).value;
        const double sb = estimate(m, build_sp_cdf(t, fit_tail(t, fam, 0.1))).value;
        const double tol = fam == TailFamily::Gpd ? 1e-6 : 1e-12;
        EXPECT_NEAR(sa, sb, tol * sa) << to_string(fam) << " " << to_string(m);
      }
    }
  }
}

TEST(ScaleInvariance, PowersOfTwoAreBitwise) {
  const Sample s(simulate(Pareto{0.4}, 1000, 3));
  const Sample t = s.scaled(1024.0);
  // GE0 and A1 pass through log(lambda x) and are covered by the tolerance
  // test above.
  for (Measure m : {Measure::Gini, Measure::QSR}) {
    EXPECT_EQ(estimate(m, s).value, estimate(m, t).value);
    for (TailFamily fam : {TailFamily::Pareto, TailFamily::Ppd}) {
      EXPECT_EQ(estimate(m, build_sp_cdf(s, fit_tail(s, fam, 0.1))).value,
                estimate(m, build_sp_cdf(t, fit_tail(t, fam, 0.1))).value);
    }
  }
}

TEST(GiniSp, IncreasesWithTailIndex) {
  double prev = 0;
  for (double g : {0.2, 0.4, 0.6}) {
    const Sample s(simulate(Pareto{g}, 10000, 2718));
    const double gini = gini_sp(build_sp_cdf(s, fit_tail(s, TailFamily::Pareto, 0.1))).value;
    EXPECT_GT(gini, prev) << "gamma = " << g;
    prev = gini;
  }
}

TEST(Descriptive, Examples) {
  const auto a = descriptive_stats(Sample(std::vector<double>{3, 1, 2}));
  EXPECT_EQ(a.n, 3);
  EXPECT_EQ(a.median, 2.0);
  EXPECT_EQ(a.max, 3.0);
  EXPECT_EQ(a.mad, 1.0);
  EXPECT_EQ(descriptive_stats(Sample(std::vector<double>{1, 1, 1})).mad, 0.0);
  const auto b = descriptive_stats(Sample(std::vector<double>{1, 2, 4, 10}));
  EXPECT_EQ(b.median, 3.0);
  EXPECT_EQ(b.mad, 1.5);  // deviations {2, 1, 1, 7}
  EXPECT_DOUBLE_EQ(descriptive_stats(Sample(std::vector<double>{1, 2, 4, 10}), true).mad,
                   1.5 * kMadConsistency);
}
