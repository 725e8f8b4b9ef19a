#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tailineq/random.hpp"
#include "tailineq/repr.hpp"

using namespace tailineq;

namespace {

ArrayXd values(std::initializer_list<double> v) {
  ArrayXd a(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

}  // namespace

TEST(Bertino, Examples) {
  EXPECT_NEAR(bertino_index(values({0.25, 0.75})), 1.0, 1e-15);
  EXPECT_NEAR(bertino_index(values({0.0, 0.0})), 0.0, 1e-15);
  EXPECT_NEAR(bertino_index(values({1.0, 1.0})), 0.0, 1e-15);
  EXPECT_NEAR(bertino_index(values({0.5, 0.5})), 0.8, 1e-15);
  EXPECT_THROW(bertino_index(ArrayXd()), DomainError);
}

TEST(Bertino, PerfectPlottingPositionsGiveOne) {
  for (int n : {1, 7, 1000}) {
    ArrayXd f(n);
    for (int i = 0; i < n; ++i) f(i) = (2.0 * (i + 1) - 1.0) / (2.0 * n);
    EXPECT_NEAR(bertino_index(f), 1.0, 1e-12);
  }
}

TEST(Bertino, BoundedForMonotoneValuesInUnitInterval) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> size(1, 200);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> shape(0, 3);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = size(rng);
    ArrayXd f(n);
    for (auto& v : f) v = unit(rng);
    // Push some vectors toward the extremes, where the bound is tight.
    switch (shape(rng)) {
      case 0: f = f.square().square(); break;
      case 1: f = 1.0 - f.square().square(); break;
      case 2: f = (f < 0.5).select(0.0, ArrayXd::Ones(n)); break;
      default: break;
    }
    std::sort(f.begin(), f.end());
    const double r = bertino_index(f);
    EXPECT_GE(r, -1e-12);
    EXPECT_LE(r, 1.0);
  }
}

TEST(Bertino, DependsOnlyOnCdfValues) {
  const std::vector<double> x = simulate(Pareto{0.5}, 500, 3);
  ArrayXd sorted = Eigen::Map<const ArrayXd>(x.data(), 500);
  std::sort(sorted.begin(), sorted.end());
  const Pareto p{0.5};
  const double base = bertino_index(sorted, [&](double v) { return pareto_cdf(v, p); });
  // Strictly increasing transforms applied to data and distribution alike.
  const ArrayXd logged = sorted.log();
  EXPECT_NEAR(bertino_index(logged, [&](double v) { return pareto_cdf(std::exp(v), p); }),
              base, 1e-13);
  const ArrayXd cubed = sorted.cube();
  EXPECT_NEAR(bertino_index(cubed, [&](double v) { return pareto_cdf(std::cbrt(v), p); }),
              base, 1e-13);
}

TEST(Bertino, TrueDistributionScoresNearOne) {
  for (const TailParams p : {TailParams{Pareto{0.5}}, TailParams{Gpd{1.0, 0.3}},
                             TailParams{Ppd{0.5, 0.5, 1.0}}}) {
    std::vector<double> x = simulate(p, 10000, 2024);
    std::sort(x.begin(), x.end());
    const ArrayXd sorted = Eigen::Map<const ArrayXd>(x.data(), 10000);
    EXPECT_GT(bertino_index(sorted, [&](double v) { return tail_cdf(v, p); }), 0.99);
  }
}

TEST(ChooseFamily, LargestScoreWins) {
  using F = TailFamily;
  EXPECT_EQ(choose_family({{F::Gpd, 0.99}, {F::Pareto, 0.97}, {F::Ppd, 0.98}}), F::Gpd);
  EXPECT_EQ(choose_family({{F::Gpd, 0.97}, {F::Pareto, 0.98}, {F::Ppd, 0.99}}), F::Ppd);
  EXPECT_EQ(choose_family({{F::Gpd, 0.9}}), F::Gpd);
  EXPECT_THROW(choose_family({}), DomainError);
}

TEST(ChooseFamily, TiesFollowPriority) {
  using F = TailFamily;
  const double r = 0.9998;
  EXPECT_EQ(choose_family({{F::Gpd, r}, {F::Pareto, r}, {F::Ppd, r}}), F::Pareto);
  EXPECT_EQ(choose_family({{F::Gpd, r}, {F::Pareto, r - 5e-10}, {F::Ppd, r}}), F::Pareto);
  EXPECT_EQ(choose_family({{F::Gpd, r}, {F::Pareto, r - 1e-6}, {F::Ppd, r}}), F::Ppd);
  EXPECT_EQ(choose_family({{F::Gpd, r}, {F::Pareto, r - 1e-6}, {F::Ppd, r - 5e-10}}), F::Ppd);
  EXPECT_EQ(choose_family({{F::Gpd, r}, {F::Ppd, r - 2e-9}}), F::Gpd);
  EXPECT_EQ(choose_family({{F::Gpd, std::nan("")}, {F::Ppd, 0.5}}), F::Ppd);
}

TEST(SelectTailModel, ParetoDataPicksAPowerLaw) {
  const Sample s(simulate(Pareto{0.5}, 10000, 77));
  const SelectionReport r = select_tail_model(s, 0.1);
  EXPECT_EQ(r.k, 1000);
  ASSERT_EQ(r.scores.size(), 3);
  EXPECT_TRUE(r.failures.empty());
  for (const auto& [family, score] : r.scores) {
    EXPECT_GE(score, 0.0);
    EXPECT_LE(score, 1.0);
  }
  EXPECT_GT(r.scores.at(TailFamily::Pareto), 0.99);
  EXPECT_GT(r.scores.at(TailFamily::Ppd), 0.99);
  EXPECT_TRUE(r.chosen == TailFamily::Pareto || r.chosen == TailFamily::Ppd);
  EXPECT_EQ(r.chosen, choose_family(r.scores));
  for (const auto& [family, fit] : r.fits) {
    EXPECT_EQ(fit.k, r.k);
    EXPECT_EQ(fit.u, s.order_stat(9000));
  }
}

TEST(SelectTailModel, ConstantTailFailsEveryFamily) {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i < 80 ? i + 1.0 : 500.0;
  try {
    select_tail_model(Sample(v), 0.1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("GPD"), std::string::npos) << what;
    EXPECT_NE(what.find("Pa:"), std::string::npos) << what;
    EXPECT_NE(what.find("PPD"), std::string::npos) << what;
  }
}
