#include "itespec/count_report.hpp"

#include <cmath>

#include "itespec/errors.hpp"

namespace itespec {

double CountReport::relative_residual(std::size_t i) const {
  return std::abs(static_cast<double>(counts[i]) - weyl[i]) /
         std::pow(radii[i], dimension);
}

double fit_power_law(std::span<const double> radii,
                     std::span<const std::int64_t> counts, int exponent) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double basis = std::pow(radii[i], exponent);
    num += basis * static_cast<double>(counts[i]);
    den += basis * basis;
  }
  return den > 0.0 ? num / den : 0.0;
}

void check_radius_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("radius grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= 0.0) {
      throw DomainError("radius grid entries must be finite and > 0");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw DomainError("radius grid must be strictly increasing");
    }
  }
}

CountReport make_count_report(int dimension, double coefficient,
                              std::vector<double> radii,
                              std::vector<std::int64_t> counts,
                              std::vector<std::int64_t> dirichlet_diff) {
  CountReport rep;
  rep.dimension = dimension;
  rep.coefficient = coefficient;
  rep.radii = std::move(radii);
  rep.counts = std::move(counts);
  rep.dirichlet_diff = std::move(dirichlet_diff);
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    const double r = rep.radii[i];
    const double pred = coefficient * std::pow(r, dimension);
    rep.weyl.push_back(pred);
    rep.residual_scaled.push_back(std::abs(static_cast<double>(rep.counts[i]) - pred) /
                                  std::pow(r, dimension - 1));
  }
  const std::size_t half = rep.radii.size() / 2;
  rep.fit_coefficient = fit_power_law(
      std::span(rep.radii).subspan(half), std::span(rep.counts).subspan(half), dimension);
  return rep;
}

}  // namespace itespec
