#pragma once

#include <cmath>
#include <limits>

namespace pinch {

struct LineMinimum {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

namespace detail {
inline void keep_better(LineMinimum& best, double x, double v) {
  // Strict improvement, or an equal value at a smaller x.
  if (v < best.value || (v == best.value && x < best.x)) {
    best.x = x;
    best.value = v;
  }
}
}  // namespace detail

/// Golden-section search for a minimum of `f` on [lo, hi]. Stops once the
/// bracket is narrower than `tol`. Returns the best point actually evaluated,
/// never an interpolated one, so the reported value is always attained.
template <class F>
LineMinimum golden_section_minimize(F&& f, double lo, double hi, double tol, int max_evals = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  LineMinimum best;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.evaluations = 2;
  detail::keep_better(best, c, fc);
  detail::keep_better(best, d, fd);
  while (b - a > tol && best.evaluations < max_evals) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      detail::keep_better(best, c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      detail::keep_better(best, d, fd);
    }
    ++best.evaluations;
  }
  return best;
}

/// Splits [lo, hi] into `segments` equal pieces, evaluates every breakpoint,
/// runs golden-section in each piece, and keeps the overall best.
template <class F>
LineMinimum segmented_golden_minimize(F&& f, double lo, double hi, int segments, double tol) {
  LineMinimum best;
  const double width = (hi - lo) / segments;
  for (int s = 0; s <= segments; ++s) {
    const double x = s == segments ? hi : lo + s * width;
    detail::keep_better(best, x, f(x));
    ++best.evaluations;
  }
  for (int s = 0; s < segments; ++s) {
    const double a = lo + s * width;
    const double b = s + 1 == segments ? hi : a + width;
    LineMinimum seg = golden_section_minimize(f, a, b, tol);
    best.evaluations += seg.evaluations;
    detail::keep_better(best, seg.x, seg.value);
  }
  return best;
}

}  // namespace pinch
