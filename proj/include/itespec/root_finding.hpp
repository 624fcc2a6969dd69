#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace itespec::roots {

struct ValueAndSlope {
  double value;
  double slope;
};

using SmoothFunction = std::function<ValueAndSlope(double)>;

/// Newton's method kept inside [lo, hi]; falls back to bisection whenever
/// the Newton step leaves the bracket or stalls. Requires f(lo) and f(hi)
/// of opposite sign (zeros at an endpoint are returned as-is).
double safeguarded_newton(const SmoothFunction& f, double lo, double hi,
                          double x_start, double rel_tol = 4e-16);

/// Same, for a function without an available derivative.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 4e-16);

/// Golden-section search for the minimum of f on [lo, hi].
std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double lo, double hi,
    double abs_tol);

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace itespec::roots
