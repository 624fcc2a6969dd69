#include "itespec/root_finding.hpp"

#include <algorithm>
#include <limits>

#include "itespec/errors.hpp"

namespace itespec::roots {

double safeguarded_newton(const SmoothFunction& f, double lo, double hi,
                          double x_start, double rel_tol) {
  auto flo = f(lo).value;
  auto fhi = f(hi).value;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (sign_of(flo) == sign_of(fhi)) {
    throw PreconditionError("safeguarded_newton: bracket has no sign change");
  }
  // Orient so that f(a) < 0 < f(b).
  double a = lo, b = hi;
  if (flo > 0.0) std::swap(a, b);

  double x = (x_start > std::min(lo, hi) && x_start < std::max(lo, hi))
                 ? x_start
                 : 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  auto fx = f(x);

  for (int it = 0; it < 200; ++it) {
    if (fx.value == 0.0) return x;
    if (fx.value < 0.0) a = x; else b = x;

    const double newton = x - fx.value / fx.slope;
    const bool outside = !std::isfinite(newton) ||
                         (newton - a) * (newton - b) > 0.0;
    const bool slow = std::abs(2.0 * fx.value) > std::abs(dx_old * fx.slope);
    dx_old = dx;
    double next;
    if (outside || slow) {
      next = 0.5 * (a + b);
      dx = next - x;
    } else {
      next = newton;
      dx = next - x;
    }
    const double tol = rel_tol * std::max(1.0, std::abs(next));
    x = next;
    if (std::abs(dx) <= tol || std::abs(b - a) <= tol) return x;
    fx = f(x);
  }
  return x;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (sign_of(flo) == sign_of(fhi)) {
    throw PreconditionError("bisect: bracket has no sign change");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (std::abs(hi - lo) <= rel_tol * std::max(1.0, std::abs(mid))) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double lo, double hi,
    double abs_tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (std::abs(hi - lo) > abs_tol) {
    if (fc < fd) {
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
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace itespec::roots
