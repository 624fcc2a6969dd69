#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "itespec/contrast.hpp"
#include "itespec/count_report.hpp"

namespace itespec {

/// Closed axis-aligned rectangle in the complex plane.
struct Rectangle {
  double re_lo;
  double re_hi;
  double im_lo;
  double im_hi;

  Rectangle(double re_lo, double re_hi, double im_lo, double im_hi);

  double width() const noexcept { return re_hi - re_lo; }
  double height() const noexcept { return im_hi - im_lo; }
  std::complex<double> center() const noexcept {
    return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)};
  }
  bool contains(std::complex<double> z, double slack = 0.0) const noexcept;
};

struct ComplexIte {
  std::complex<double> z;
  int mult;
};

/// C(gamma) with F != 0 whenever |Im lambda| > C, from the exponential-sum
/// lower bound 4|F| >= |g-1| e^{(g+1)|y|} - (3 + 3g + |g-1|) e^{|g-1||y|}.
double strip_bound(const Contrast& c);

struct WindingOptions {
  int max_doublings = 16;
  // Accept once two successive refinements sit within this of one integer.
  double integer_band = 0.25;
  // Edges closer than this (Newton distance |F/F'|) to a zero are shifted.
  double edge_guard = 1e-9;
  double edge_shift = 1e-6;
};

struct WindingResult {
  int count;
  std::complex<double> raw;  // (1/2 pi i) contour integral of F'/F before rounding
  int points_per_unit;       // final sampling density
  Rectangle used;            // rectangle after any edge perturbation
};

/// Number of zeros of F inside `rect`, counted with multiplicity, by the
/// argument principle. Throws NumericalError if the quadrature never settles.
int winding_count(const Contrast& c, const Rectangle& rect,
                  const WindingOptions& opts = {});
WindingResult winding_count_detailed(const Contrast& c, const Rectangle& rect,
                                     const WindingOptions& opts = {});

struct ComplexEnumeration {
  std::vector<ComplexIte> zeros;  // sorted by (Re, Im); conjugate-closed
  double strip = 0.0;             // C(gamma) used for the search band
  double re_start = 1e-3;         // left edge of the search region
  // Zeros (with multiplicity) found with 0 < Re <= re_start; diagnostic only.
  int near_imaginary_axis = 0;
  // Cells that shrank below the resolution floor without isolating a zero.
  int unresolved_clusters = 0;
};

/// All zeros of F in (re_start, R] x [-C, C] with multiplicities.
ComplexEnumeration enumerate_complex_ites_detailed(const Contrast& c, double R,
                                                   const WindingOptions& opts = {});
std::vector<ComplexIte> enumerate_complex_ites(const Contrast& c, double R);

/// Total multiplicity of zeros with Re z <= R.
std::int64_t total_multiplicity(std::span<const ComplexIte> zeros, double R);

/// N_alg_C(R) against (1 + gamma) R / pi on a radius grid.
CountReport titchmarsh_residual(const Contrast& c, std::span<const double> grid);
CountReport titchmarsh_residual(const Contrast& c, std::span<const double> grid,
                                std::span<const ComplexIte> zeros);

}  // namespace itespec
