#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "wpa/parallel.hpp"

namespace wpa::detail {

struct Minimum {
  double x;
  double value;
};

// Golden-section search for a unimodal f on [a, b].
inline Minimum golden_section(const std::function<double(double)>& f, double a, double b,
                              double tol = 1e-10) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  double fx = f(x);
  if (fc < fx) return {c, fc};
  if (fd < fx) return {d, fd};
  return {x, fx};
}

// Coarse scan of f at t_k = lo + (hi-lo) k/count (k < count, or k <= count when
// closed) followed by golden-section refinement between the argmin's neighbours.
// Periodic scans wrap the bracket around.
inline Minimum scan_and_refine(const std::function<double(double)>& f, double lo, double hi,
                               int count, bool periodic, double tol = 1e-10) {
  int pts = periodic ? count : count + 1;
  std::vector<double> vals(static_cast<std::size_t>(pts));
  double h = (hi - lo) / count;
  parallel_for(vals.size(), [&](std::size_t k) { vals[k] = f(lo + h * static_cast<double>(k)); });
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (vals[k] < vals[best]) best = k;
  double t = lo + h * static_cast<double>(best);
  double a = t - h;
  double b = t + h;
  if (!periodic) {
    a = std::max(a, lo);
    b = std::min(b, hi);
  }
  Minimum m = golden_section(f, a, b, tol);
  if (vals[best] < m.value) return {t, vals[best]};
  return m;
}

}  // namespace wpa::detail
