#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace itespec {

/// Counting function sampled on a radius grid against a power-law prediction
/// coefficient * r^dimension.
struct CountReport {
  int dimension = 1;
  double coefficient = 0.0;
  std::vector<double> radii;
  std::vector<std::int64_t> counts;
  // |N_1(r) - N_gamma(r)|; empty when not applicable.
  std::vector<std::int64_t> dirichlet_diff;
  std::vector<double> weyl;
  // |N(r) - weyl| / r^(dimension - 1)
  std::vector<double> residual_scaled;
  // least-squares c in N(r) = c r^dimension over the top half of the grid
  double fit_coefficient = 0.0;

  std::size_t size() const noexcept { return radii.size(); }
  /// |N(r) - weyl| / r^dimension
  double relative_residual(std::size_t i) const;
};

/// Least-squares coefficient c minimising sum (N_i - c r_i^exponent)^2.
double fit_power_law(std::span<const double> radii,
                     std::span<const std::int64_t> counts, int exponent);

CountReport make_count_report(int dimension, double coefficient,
                              std::vector<double> radii,
                              std::vector<std::int64_t> counts,
                              std::vector<std::int64_t> dirichlet_diff = {});

/// Throws DomainError unless the grid is non-empty, positive and strictly increasing.
void check_radius_grid(std::span<const double> grid);

}  // namespace itespec
