#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "catport/errors.hpp"

namespace catport {

// Golden-section maximization of a unimodal objective on [a, b]. Shrinks the
// bracket until its width is below rel_tol * scale (scale defaults to the
// bracket location) and returns the midpoint with its value.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double rel_tol = 1e-6,
                                             int max_iter = 200) {
  if (!(b > a)) throw Error("golden_section_max: empty interval");
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  for (int i = 0; i < max_iter && (b - a) > rel_tol * scale; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Bisection for f(x) = 0 on [lo, hi]. Requires a sign change across the
// endpoints; stops when the interval is narrower than tol.
template <typename F>
double bisect_crossing(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  if (!(hi > lo) || !(tol > 0.0)) throw Error("bisect_crossing: bad interval or tolerance");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw NoBracket("bisect_crossing: endpoints do not straddle the target");
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace catport
