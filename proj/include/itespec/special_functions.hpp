#pragma once

#include <complex>
#include <span>
#include <vector>

namespace itespec {

/// Bessel order nu >= 0. In n dimensions the order attached to angular
/// momentum l is nu = l + n/2 - 1.
class Order {
 public:
  explicit Order(double nu);
  static Order for_momentum(int n, int l);

  double value() const noexcept { return nu_; }
  operator double() const noexcept { return nu_; }

 private:
  double nu_;
};

/// J_nu(x) for x >= 0. J_0(0) = 1 and J_nu(0) = 0 for nu > 0.
double bessel_j(Order nu, double x);

/// J_nu'(x), x > 0, via J_nu' = (nu/x) J_nu - J_{nu+1}.
double bessel_j_prime(Order nu, double x);

struct BesselPair {
  double value;
  double derivative;
};

/// J_nu(x) and J_nu'(x) from a single pair of evaluations.
BesselPair bessel_j_with_prime(Order nu, double x);

/// H^{(1)}_nu(x) = J_nu(x) + i Y_nu(x), x > 0.
std::complex<double> hankel1(Order nu, double x);

/// d/dx H^{(1)}_nu(x), x > 0.
std::complex<double> hankel1_prime(Order nu, double x);

/// Reduced Bessel function j_nu(lambda) = lambda^{1-n/2} J_{l+n/2-1}(lambda).
double reduced_j(int n, int l, double lambda);

/// Positive zeros of J_nu below a bound. Immutable once built.
class ZeroTable {
 public:
  ZeroTable(Order nu, double upper_bound, std::vector<double> zeros);

  Order order() const noexcept { return nu_; }
  double upper_bound() const noexcept { return upper_; }
  std::span<const double> zeros() const noexcept { return zeros_; }
  std::size_t size() const noexcept { return zeros_.size(); }
  double operator[](std::size_t k) const { return zeros_[k]; }

  /// Number of tabulated zeros <= x (x must not exceed upper_bound()).
  std::size_t count_at_most(double x) const;

 private:
  Order nu_;
  double upper_;
  std::vector<double> zeros_;
};

/// All positive zeros of J_nu in (0, upper], each refined until
/// |J_nu(z)| <= 1e-12 (1 + |z J_nu'(z)|).
ZeroTable bessel_zeros(Order nu, double upper);

/// As bessel_zeros, plus the first zero beyond `upper` appended at the end.
ZeroTable bessel_zeros_with_successor(Order nu, double upper);

/// j_{nu,1}.
double first_bessel_zero(Order nu);

/// McMahon's large-k form j_{nu,k} ~ (k + nu/2 - 1/4) pi - (4nu^2-1)/(8 beta) - ...
double mcmahon_zero(Order nu, int k);

/// Acceptance threshold used for tabulated zeros.
inline constexpr double kZeroTolerance = 1e-12;

}  // namespace itespec
