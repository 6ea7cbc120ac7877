#pragma once

// One-dimensional maximisation: coarse grid, then golden-section refinement
// inside the bracket around the best grid point.

#include "teleclone/phase_space.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace teleclone {

struct OptimumResult {
  double location = 0.0;
  double value = 0.0;
  bool degenerate = false;  // objective flat over the whole interval
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int evaluations = 0;
};

struct MaximizeOptions {
  int grid_points = 41;
  double tolerance = 1e-7;
  double flat_tolerance = 1e-12;
};

inline OptimumResult maximize(const std::function<double(double)>& f, double lo, double hi,
                              const MaximizeOptions& opt = {}) {
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "maximize: need lo < hi");
  detail::require(opt.grid_points >= 3, "maximize: need at least three grid points");
  OptimumResult res;
  std::vector<double> xs(static_cast<std::size_t>(opt.grid_points));
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    ys[i] = f(xs[i]);
    ++res.evaluations;
  }
  std::size_t best = 0;
  double y_min = ys[0];
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] > ys[best]) best = i;
    y_min = std::min(y_min, ys[i]);
  }
  if (ys[best] - y_min <= opt.flat_tolerance * std::max(1.0, std::abs(ys[best]))) {
    res.degenerate = true;
    res.location = 0.5 * (lo + hi);
    res.value = ys[best];
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    return res;
  }

  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[best + 1 == xs.size() ? best : best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  res.evaluations += 2;
  while (b - a > opt.tolerance) {
    if (fc >= fd) {
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
    ++res.evaluations;
  }
  res.location = 0.5 * (a + b);
  res.value = f(res.location);
  ++res.evaluations;
  // Grid endpoints can beat the interior refinement on monotone objectives.
  if (ys[best] > res.value) {
    res.location = xs[best];
    res.value = ys[best];
  }
  res.bracket_lo = a;
  res.bracket_hi = b;
  return res;
}

}  // namespace teleclone
