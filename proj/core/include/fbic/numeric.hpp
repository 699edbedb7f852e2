#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace fbic::numeric {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than `tol`.
template <class F>
Maximum golden_section_maximize(F&& f, double lo, double hi, double tol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  Maximum best{c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

/// Evaluates f on `points` equally spaced samples of [lo, hi], then refines
/// around the best sample with golden-section search. The grid pass makes the
/// result robust to objectives that are not unimodal on the whole interval.
template <class F>
Maximum grid_golden_maximize(F&& f, double lo, double hi, std::size_t points = 2001,
                             double tol = 1e-12) {
  const double h = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best_i = 0;
  double best_v = f(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = best_i == 0 ? lo : lo + h * static_cast<double>(best_i - 1);
  const double b = best_i + 1 >= points ? hi : lo + h * static_cast<double>(best_i + 1);
  Maximum refined = golden_section_maximize(f, a, b, tol);
  const double x_grid = lo + h * static_cast<double>(best_i);
  if (refined.value < best_v) refined = {x_grid, best_v};
  return refined;
}

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign (or zero).
/// Runs until the midpoint no longer moves.
template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Scans `points` samples of [lo, hi] and bisects every cell whose endpoint
/// values change sign. Exact zeros on grid points are reported once.
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, std::size_t points) {
  std::vector<double> roots;
  const double h = (hi - lo) / static_cast<double>(points - 1);
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) roots.push_back(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + h * static_cast<double>(i);
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && ((fx < 0.0) != (f_prev < 0.0))) {
      roots.push_back(bisect(f, x_prev, x));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace fbic::numeric
