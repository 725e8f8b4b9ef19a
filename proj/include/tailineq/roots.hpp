#pragma once

#include <cmath>
#include <utility>

#include "tailineq/core.hpp"

namespace tailineq {

// Root of a monotone function on [lo, hi] with f(lo) and f(hi) of opposite
// sign. Illinois-modified regula falsi; falls back to a bisection step when
// the secant step fails to halve the bracket. Stops once |f| <= f_tol or the
// bracket cannot shrink further in floating point.
template <typename Scalar, typename Fn>
Scalar bracketed_root(Fn&& f, Scalar lo, Scalar hi, Scalar f_tol,
                      int max_iterations = 500) {
  Scalar f_lo = f(lo);
  Scalar f_hi = f(hi);
  if (std::abs(f_lo) <= f_tol) return lo;
  if (std::abs(f_hi) <= f_tol) return hi;
  if ((f_lo > 0) == (f_hi > 0)) {
    throw DomainError("bracketed_root: interval does not bracket a root");
  }

  int side = 0;
  Scalar width = hi - lo;
  for (int it = 0; it < max_iterations; ++it) {
    Scalar x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = lo + (hi - lo) / 2;

    Scalar fx = f(x);
    if (std::abs(fx) <= f_tol) return x;

    if ((fx > 0) == (f_hi > 0)) {
      hi = x;
      f_hi = fx;
      if (side == -1) f_lo /= 2;
      side = -1;
    } else {
      lo = x;
      f_lo = fx;
      if (side == 1) f_hi /= 2;
      side = 1;
    }

    // Guarantee geometric shrinkage.
    if (hi - lo > width / 2) {
      Scalar mid = lo + (hi - lo) / 2;
      Scalar fm = f(mid);
      if (std::abs(fm) <= f_tol) return mid;
      if ((fm > 0) == (f_hi > 0)) {
        hi = mid;
        f_hi = fm;
      } else {
        lo = mid;
        f_lo = fm;
      }
      side = 0;
    }
    width = hi - lo;

    Scalar next_up = std::nextafter(lo, hi);
    if (next_up >= hi) break;
  }
  return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
}

}  // namespace tailineq
