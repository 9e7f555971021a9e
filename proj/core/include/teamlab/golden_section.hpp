#pragma once

#include <cmath>
#include <functional>

namespace teamlab {

struct ScalarMaximum {
  double argmax;
  double value;
};

/// Golden-section maximisation of a unimodal function on [lo, hi]. Stops when the
/// bracket is narrower than `bracket_width`. The returned point is snapped to a bound
/// whenever the bound's value is at least the interior value.
inline ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                             double hi, double bracket_width = 1e-8) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > bracket_width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  ScalarMaximum best{0.5 * (a + b), f(0.5 * (a + b))};
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo >= best.value && f_lo >= f_hi) return {lo, f_lo};
  if (f_hi >= best.value) return {hi, f_hi};
  return best;
}

}  // namespace teamlab
