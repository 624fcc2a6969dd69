#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "itespec/contrast.hpp"

namespace itespec {

// Half-line model: u = a sin(lambda x), v = b sin(gamma lambda x) with
// matching Cauchy data at x = 1. The boundary determinant is
//   F(lambda) = gamma sin(lambda) cos(gamma lambda) - sin(gamma lambda) cos(lambda).

struct OneDOptions {
  // A pole k*pi is a common zero of sin(lambda) and sin(gamma lambda) when
  // gamma*k is this close to an integer. Ignored for rational contrasts.
  double common_zero_tol = 1e-8;
  // |F(lambda0)| <= root_tol * (1 + gamma) is accepted as "lambda0 is a root".
  double root_tol = 1e-8;
};

double f_1d(const Contrast& c, double lambda);
std::complex<double> f_1d(const Contrast& c, std::complex<double> z);

/// F'(z) = (1 - gamma^2) sin(z) sin(gamma z).
std::complex<double> f_1d_prime(const Contrast& c, std::complex<double> z);

struct Derivatives1D {
  double f;
  double d1;
  double d2;
  double d3;
};

Derivatives1D f_1d_derivatives(const Contrast& c, double lambda);

/// Difference of Dirichlet-to-Neumann symbols gamma cot(gamma lambda) - cot(lambda).
double dn_difference(const Contrast& c, double lambda);
std::complex<double> dn_difference(const Contrast& c, std::complex<double> z);

/// All real roots of F in (0, r], sorted, each reported once.
std::vector<RealIte> enumerate_real_ites_1d(const Contrast& c, double r,
                                            const OneDOptions& opts = {});

/// 1 or 3. Throws PreconditionError when lambda0 is not a root.
int classify_multiplicity_1d(const Contrast& c, double lambda0,
                             const OneDOptions& opts = {});

/// Unit null vector (a, b) of the boundary matrix at a root.
struct Eigenpair1D {
  double a;
  double b;
};

Eigenpair1D eigenpair_1d(const Contrast& c, double lambda0,
                         const OneDOptions& opts = {});

/// Residual |a sin l - b sin gl| + |a cos l - b g cos gl| of an eigenpair.
double eigenpair_residual(const Contrast& c, double lambda0, Eigenpair1D pair);

std::int64_t count_1d(const Contrast& c, double r, CountMode mode,
                      const OneDOptions& opts = {});

/// Count of a ready-made root list in (0, r] under the given mode.
std::int64_t count_roots(const std::vector<RealIte>& roots, double r, CountMode mode);

}  // namespace itespec
