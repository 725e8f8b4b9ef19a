#include "tailineq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace tailineq {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
  std::vector<VectorXd> vertices;
  std::vector<double> values;

  void sort() {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    // Stable so equal values keep their insertion order.
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return values[a] < values[b];
    });
    std::vector<VectorXd> v;
    std::vector<double> f;
    for (auto i : order) {
      v.push_back(std::move(vertices[i]));
      f.push_back(values[i]);
    }
    vertices = std::move(v);
    values = std::move(f);
  }

  bool converged(double x_tol, double f_tol) const {
    const double spread = values.back() - values.front();
    if (!(spread <= f_tol * std::max(1.0, std::abs(values.front())))) {
      return false;
    }
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if ((vertices[i] - vertices[0]).lpNorm<Eigen::Infinity>() > x_tol) {
        return false;
      }
    }
    return true;
  }
};

Simplex initial_simplex(const Objective& f, const VectorXd& x0, double step) {
  Simplex s;
  s.vertices.push_back(x0);
  s.values.push_back(f(x0));
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    VectorXd v = x0;
    v(i) += step;
    double fv = f(v);
    if (!std::isfinite(fv)) {
      v(i) = x0(i) - step;
      fv = f(v);
    }
    s.vertices.push_back(std::move(v));
    s.values.push_back(fv);
  }
  s.sort();
  return s;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, const VectorXd& start,
                             const NelderMeadOptions& opts) {
  auto f = [&](const VectorXd& x) {
    const double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  const Eigen::Index n = start.size();
  NelderMeadResult result;
  result.x = start;
  result.f = f(start);

  int iterations = 0;
  for (int round = 0; round <= opts.restarts; ++round) {
    const double step = round == 0 ? opts.initial_step
                                   : opts.initial_step * std::pow(0.1, round);
    Simplex s = initial_simplex(f, result.x, step);
    bool converged = false;

    while (iterations < opts.max_iterations) {
      if (s.converged(opts.x_tol, opts.f_tol)) {
        converged = true;
        break;
      }
      ++iterations;

      VectorXd centroid = VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) centroid += s.vertices[i];
      centroid /= static_cast<double>(n);

      const VectorXd& worst = s.vertices[n];
      VectorXd reflected = centroid + kReflect * (centroid - worst);
      const double fr = f(reflected);

      if (fr < s.values[0]) {
        VectorXd expanded = centroid + kExpand * (reflected - centroid);
        const double fe = f(expanded);
        if (fe < fr) {
          s.vertices[n] = std::move(expanded);
          s.values[n] = fe;
        } else {
          s.vertices[n] = std::move(reflected);
          s.values[n] = fr;
        }
      } else if (fr < s.values[n - 1]) {
        s.vertices[n] = std::move(reflected);
        s.values[n] = fr;
      } else {
        const bool outside = fr < s.values[n];
        VectorXd contracted =
            outside ? VectorXd(centroid + kContract * (reflected - centroid))
                    : VectorXd(centroid + kContract * (worst - centroid));
        const double fc = f(contracted);
        if (fc < (outside ? fr : s.values[n])) {
          s.vertices[n] = std::move(contracted);
          s.values[n] = fc;
        } else {
          for (Eigen::Index i = 1; i <= n; ++i) {
            s.vertices[i] = s.vertices[0] + kShrink * (s.vertices[i] - s.vertices[0]);
            s.values[i] = f(s.vertices[i]);
          }
        }
      }
      s.sort();
    }

    const double previous = result.f;
    if (s.values[0] <= result.f) {
      result.x = s.vertices[0];
      result.f = s.values[0];
    }
    result.converged = converged;
    if (!converged) break;
    // A restart that moved nothing confirms the optimum.
    if (round > 0 && std::abs(previous - result.f) <=
                         opts.f_tol * std::max(1.0, std::abs(result.f))) {
      break;
    }
  }
  result.iterations = iterations;
  return result;
}

}  // namespace tailineq
