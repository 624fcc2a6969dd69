#include "itespec/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "itespec/errors.hpp"
#include "itespec/root_finding.hpp"

namespace itespec {
namespace {

using std::numbers::pi;

void check_argument(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": non-finite argument");
  }
}

double j_raw(double nu, double x) {
  try {
    return boost::math::cyl_bessel_j(nu, x);
  } catch (const boost::math::evaluation_error& e) {
    throw NumericalError(std::string("bessel_j: ") + e.what());
  }
}

double y_raw(double nu, double x) {
  try {
    return boost::math::cyl_neumann(nu, x);
  } catch (const boost::math::evaluation_error& e) {
    throw NumericalError(std::string("hankel1: ") + e.what());
  } catch (const std::overflow_error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

struct ZeroSearch {
  double nu;

  roots::ValueAndSlope operator()(double x) const {
    const auto p = bessel_j_with_prime(Order(nu), x);
    return {p.value, p.derivative};
  }
  double value(double x) const { return j_raw(nu, x); }
};

bool accepted_zero(double nu, double z) {
  const auto p = bessel_j_with_prime(Order(nu), z);
  return std::abs(p.value) <= kZeroTolerance * (1.0 + std::abs(z * p.derivative));
}

// Walks forward from `from` (where J_nu has the sign of `from`'s value) in
// fixed steps until J_nu changes sign. Returns the bracketing pair.
std::pair<double, double> scan_for_sign_change(const ZeroSearch& s, double from,
                                               double step) {
  double a = from;
  double fa = s.value(a);
  for (int i = 0; i < 1000000; ++i) {
    const double b = a + step;
    const double fb = s.value(b);
    if (roots::sign_of(fa) != roots::sign_of(fb) || fb == 0.0) return {a, b};
    a = b;
    fa = fb;
  }
  throw NumericalError("bessel_zeros: no sign change found while scanning");
}

double refine_zero(const ZeroSearch& s, double lo, double hi, double guess) {
  const double z = roots::safeguarded_newton(
      [&](double x) { return s(x); }, lo, hi, guess);
  if (!accepted_zero(s.nu, z)) {
    throw NumericalError("bessel_zeros: refined zero fails tolerance at nu=" +
                         std::to_string(s.nu) + ", z=" + std::to_string(z));
  }
  return z;
}

double first_zero(const ZeroSearch& s) {
  // J_nu > 0 on (0, j_{nu,1}) and j_{nu,1} > nu; gaps exceed 3.
  const double start = std::max(s.nu, 0.5);
  const auto [lo, hi] = scan_for_sign_change(s, start, 0.5);
  return refine_zero(s, lo, hi, 0.5 * (lo + hi));
}

}  // namespace

Order::Order(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw DomainError("Bessel order must be finite and >= 0");
  }
}

Order Order::for_momentum(int n, int l) {
  if (n < 2 || l < 0) throw DomainError("order requires n >= 2 and l >= 0");
  return Order(l + 0.5 * n - 1.0);
}

double bessel_j(Order nu, double x) {
  check_argument(x, "bessel_j");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) return nu.value() == 0.0 ? 1.0 : 0.0;
  return j_raw(nu, x);
}

BesselPair bessel_j_with_prime(Order nu, double x) {
  check_argument(x, "bessel_j_prime");
  if (x <= 0.0) throw DomainError("bessel_j_prime: argument must be > 0");
  const double j = j_raw(nu, x);
  const double j_next = j_raw(nu.value() + 1.0, x);
  return {j, nu.value() / x * j - j_next};
}

double bessel_j_prime(Order nu, double x) {
  return bessel_j_with_prime(nu, x).derivative;
}

std::complex<double> hankel1(Order nu, double x) {
  check_argument(x, "hankel1");
  if (x <= 0.0) throw DomainError("hankel1: argument must be > 0");
  return {j_raw(nu, x), y_raw(nu, x)};
}

std::complex<double> hankel1_prime(Order nu, double x) {
  const auto h = hankel1(nu, x);
  const auto h_next = hankel1(Order(nu.value() + 1.0), x);
  return nu.value() / x * h - h_next;
}

double reduced_j(int n, int l, double lambda) {
  check_argument(lambda, "reduced_j");
  if (lambda <= 0.0) throw DomainError("reduced_j: lambda must be > 0");
  const Order nu = Order::for_momentum(n, l);
  return std::pow(lambda, 1.0 - 0.5 * n) * j_raw(nu, lambda);
}

double mcmahon_zero(Order nu, int k) {
  const double mu = 4.0 * nu.value() * nu.value();
  const double beta = (k + 0.5 * nu.value() - 0.25) * pi;
  const double e = 8.0 * beta;
  const double e3 = e * e * e;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e3) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
             (15.0 * e3 * e * e);
}

ZeroTable::ZeroTable(Order nu, double upper_bound, std::vector<double> zeros)
    : nu_(nu), upper_(upper_bound), zeros_(std::move(zeros)) {}

std::size_t ZeroTable::count_at_most(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(zeros_.begin(), zeros_.end(), x) - zeros_.begin());
}

namespace {

std::vector<double> tabulate_zeros(Order nu, double upper, bool successor) {
  const ZeroSearch s{nu.value()};
  std::vector<double> zeros;
  double z = first_zero(s);
  if (z > upper) {
    if (successor) zeros.push_back(z);
    return zeros;
  }
  zeros.push_back(z);

  // Second zero: gaps are > pi for nu > 1/2 and >= j_{0,2} - j_{0,1} > 3
  // otherwise.
  {
    const double start = z + (s.nu > 0.5 ? pi * (1.0 - 1e-12) : 3.0);
    const auto [lo, hi] = scan_for_sign_change(s, start, 0.5);
    z = refine_zero(s, lo, hi, mcmahon_zero(nu, 2));
  }

  // Successive gaps move monotonically towards pi (decreasing for nu > 1/2,
  // increasing for nu < 1/2), which brackets each next zero.
  for (int k = 2;; ++k) {
    if (z > upper) {
      if (successor) zeros.push_back(z);
      break;
    }
    zeros.push_back(z);
    const double gap = zeros[k - 1] - zeros[k - 2];
    const double slack = 1e-9 * (1.0 + z);
    double lo = z + std::min(gap, pi) - slack;
    double hi = z + std::max(gap, pi) + slack;
    if (roots::sign_of(s.value(lo)) == roots::sign_of(s.value(hi))) {
      std::tie(lo, hi) = scan_for_sign_change(s, z + 2.5, 0.25);
    }
    double guess = mcmahon_zero(nu, k + 1);
    if (guess <= lo || guess >= hi) guess = z + gap;
    z = refine_zero(s, lo, hi, guess);
  }
  return zeros;
}

}  // namespace

ZeroTable bessel_zeros(Order nu, double upper) {
  check_argument(upper, "bessel_zeros");
  if (upper <= 0.0) throw DomainError("bessel_zeros: upper must be > 0");
  return ZeroTable(nu, upper, tabulate_zeros(nu, upper, false));
}

ZeroTable bessel_zeros_with_successor(Order nu, double upper) {
  check_argument(upper, "bessel_zeros");
  if (upper <= 0.0) throw DomainError("bessel_zeros: upper must be > 0");
  return ZeroTable(nu, upper, tabulate_zeros(nu, upper, true));
}

double first_bessel_zero(Order nu) { return first_zero(ZeroSearch{nu.value()}); }

}  // namespace itespec
