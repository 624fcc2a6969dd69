#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "itespec/contrast.hpp"
#include "itespec/count_report.hpp"
#include "itespec/special_functions.hpp"

namespace itespec {

/// Unit ball in R^n with constant index of refraction m (gamma = sqrt(m)).
class DimensionConfig {
 public:
  DimensionConfig(int n, double m);

  int n() const noexcept { return n_; }
  double m() const noexcept { return m_; }
  double gamma() const noexcept;
  /// Throws DomainError when m == 1.
  Contrast contrast() const;
  Order nu(int l) const { return Order::for_momentum(n_, l); }
  /// omega_n = pi^{n/2} / Gamma(n/2 + 1)
  double ball_volume() const;

 private:
  int n_;
  double m_;
};

struct NdOptions {
  // lambda0 is a common zero when |J_nu(lambda0)| and |J_nu(gamma lambda0)|
  // are both below common_zero_tol * (1 + lambda0).
  double common_zero_tol = 1e-9;
  // Relative tolerance for accepting a near-tangent minimum of |F_nu|.
  double tangency_tol = 1e-10;
  int threads = 1;
};

/// F_nu(lambda) = gamma J_nu(lambda) J_nu'(gamma lambda) - J_nu(gamma lambda) J_nu'(lambda).
double f_nu(const Contrast& c, Order nu, double lambda);

/// Same determinant without the half-integer closed-form shortcut.
double f_nu_generic(const Contrast& c, Order nu, double lambda);

struct NuDerivatives {
  double f;
  double d1;
  double d2;
  double d3;
};

/// F_nu and its first three derivatives, using
/// F' = -F/lambda + (1 - gamma^2) J_nu(lambda) J_nu(gamma lambda) and the Bessel ODE.
NuDerivatives f_nu_derivatives(const Contrast& c, Order nu, double lambda);

/// P(lambda) = gamma J_nu'(gamma lambda)/J_nu(gamma lambda) - J_nu'(lambda)/J_nu(lambda).
double log_derivative_difference(const Contrast& c, Order nu, double lambda);

/// Real roots of F_nu for one angular momentum.
struct NuSpectrum {
  int l = -1;
  double nu = 0.0;
  std::int64_t mu = 1;
  std::vector<RealIte> roots;     // sorted, all <= radius
  std::vector<double> zeros;      // J_nu zeros up to max(1, gamma) * radius, plus successor
  double radius = 0.0;
  int near_tangent = 0;           // roots located by minimising |F_nu|
  int unexpected = 0;             // sign changes the interval bookkeeping did not predict

  std::int64_t count(double r) const;
};

NuSpectrum enumerate_ites_for_nu(const Contrast& c, Order nu, double r,
                                 const NdOptions& opts = {});

/// Dimension of the degree-l spherical harmonics on S^{n-1}.
std::int64_t multiplicity_mu(int n, int l);

/// All momenta with possible roots in (0, r], i.e. j_{nu(l),1} <= max(1, gamma) r.
struct NdSpectrum {
  int n = 2;
  double gamma = 1.0;
  double radius = 0.0;
  std::vector<NuSpectrum> momenta;

  /// N(r) = sum over momenta of mu(l) * #{roots <= r}.
  std::int64_t count(double r) const;
  /// sum_l mu(l) #{k : j_{nu(l),k} <= speed r}; needs speed r <= max(1, gamma) radius.
  std::int64_t dirichlet_count(double speed, double r) const;
  /// Every root across momenta, sorted by (lambda, l).
  std::vector<RealIte> merged() const;
};

NdSpectrum enumerate_nd(const DimensionConfig& cfg, double r, const NdOptions& opts = {});

std::int64_t count_nd(const DimensionConfig& cfg, double r, const NdOptions& opts = {});

/// Ball Dirichlet counting function sum_l mu(l) #{k : j_{nu(l),k} <= speed r}.
std::int64_t dirichlet_count(const DimensionConfig& cfg, double speed, double r);

struct WeylCoefficient {
  double value;
  bool degenerate;  // m == 1
};

/// (2 pi)^{-n} omega_n^2 |1 - m^{n/2}|
WeylCoefficient weyl_coefficient(const DimensionConfig& cfg);

CountReport weyl_report(const DimensionConfig& cfg, std::span<const double> grid,
                        const NdOptions& opts = {});
CountReport weyl_report(const NdSpectrum& spectrum, const DimensionConfig& cfg,
                        std::span<const double> grid);

}  // namespace itespec
