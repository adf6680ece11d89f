#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace cfcnopa::numerics {

/// Bisection for a sign change of f on [lo, hi]. Stops when the bracket is
/// narrower than x_tol and |f(mid)| < f_tol, or when the bracket cannot
/// shrink any further. Returns nullopt if f(lo) and f(hi) share a strict sign.
template <class F>
std::optional<double> bisect(F&& f, double lo, double hi, double x_tol, double f_tol = INFINITY,
                             int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) return std::nullopt;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (hi - lo < x_tol && std::abs(fm) < f_tol) break;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

struct MinimumResult {
  double x;
  double value;
};

/// Golden-section minimization of a unimodal f on [a, b] to bracket width tol.
template <class F>
MinimumResult golden_section(F&& f, double a, double b, double tol, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? MinimumResult{c, fc} : MinimumResult{d, fd};
}

}  // namespace cfcnopa::numerics
