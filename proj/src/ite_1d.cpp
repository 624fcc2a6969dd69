#include "itespec/ite_1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "itespec/errors.hpp"
#include "itespec/root_finding.hpp"

namespace itespec {
namespace {

using std::numbers::pi;

enum class PoleType { Sine, ScaledSine, Common };

struct Pole {
  double position;
  PoleType type;
};

double distance_to_integer(double x) { return std::abs(x - std::nearbyint(x)); }

bool is_common_multiple(const Contrast& c, std::int64_t k, double tol) {
  if (const auto& rat = c.rational()) return k % rat->q == 0;
  return distance_to_integer(c.gamma() * static_cast<double>(k)) < tol;
}

// Zeros of sin(lambda) and sin(gamma lambda) up to and including the first
// one beyond r, merged; coincident pairs collapse into a Common pole.
std::vector<Pole> merged_poles(const Contrast& c, double r, double tol) {
  const double g = c.gamma();
  const auto k_max = static_cast<std::int64_t>(std::floor(r / pi)) + 1;
  const auto j_max = static_cast<std::int64_t>(std::floor(g * r / pi)) + 1;

  std::vector<Pole> poles;
  poles.reserve(static_cast<std::size_t>(k_max + j_max));
  std::vector<std::int64_t> absorbed;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    if (is_common_multiple(c, k, tol)) {
      poles.push_back({static_cast<double>(k) * pi, PoleType::Common});
      absorbed.push_back(c.rational() ? k * c.rational()->p / c.rational()->q
                                      : static_cast<std::int64_t>(std::nearbyint(g * k)));
    } else {
      poles.push_back({static_cast<double>(k) * pi, PoleType::Sine});
    }
  }
  std::sort(absorbed.begin(), absorbed.end());
  for (std::int64_t j = 1; j <= j_max; ++j) {
    if (std::binary_search(absorbed.begin(), absorbed.end(), j)) continue;
    const double pos = c.rational()
                           ? static_cast<double>(j * c.rational()->q) * pi /
                                 static_cast<double>(c.rational()->p)
                           : static_cast<double>(j) * pi / g;
    poles.push_back({pos, PoleType::ScaledSine});
  }
  std::sort(poles.begin(), poles.end(),
            [](const Pole& a, const Pole& b) { return a.position < b.position; });
  const auto beyond = std::find_if(poles.begin(), poles.end(),
                                   [r](const Pole& p) { return p.position > r; });
  if (beyond != poles.end()) poles.erase(beyond + 1, poles.end());
  return poles;
}

void check_radius(double r) {
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("radius r must be finite and > 0");
}

}  // namespace

double f_1d(const Contrast& c, double lambda) {
  const double g = c.gamma();
  return g * std::sin(lambda) * std::cos(g * lambda) -
         std::sin(g * lambda) * std::cos(lambda);
}

std::complex<double> f_1d(const Contrast& c, std::complex<double> z) {
  const double g = c.gamma();
  return g * std::sin(z) * std::cos(g * z) - std::sin(g * z) * std::cos(z);
}

std::complex<double> f_1d_prime(const Contrast& c, std::complex<double> z) {
  const double g = c.gamma();
  return (1.0 - g * g) * std::sin(z) * std::sin(g * z);
}

Derivatives1D f_1d_derivatives(const Contrast& c, double lambda) {
  const double g = c.gamma();
  const double s = std::sin(lambda), co = std::cos(lambda);
  const double sg = std::sin(g * lambda), cg = std::cos(g * lambda);
  const double k = 1.0 - g * g;
  return {
      g * s * cg - sg * co,
      k * s * sg,
      k * (co * sg + g * s * cg),
      k * (2.0 * g * co * cg - (1.0 + g * g) * s * sg),
  };
}

double dn_difference(const Contrast& c, double lambda) {
  const double g = c.gamma();
  return g / std::tan(g * lambda) - 1.0 / std::tan(lambda);
}

std::complex<double> dn_difference(const Contrast& c, std::complex<double> z) {
  const double g = c.gamma();
  return g / std::tan(g * z) - 1.0 / std::tan(z);
}

std::vector<RealIte> enumerate_real_ites_1d(const Contrast& c, double r,
                                            const OneDOptions& opts) {
  check_radius(r);
  const auto poles = merged_poles(c, r, opts.common_zero_tol);

  // Between consecutive poles F' = (1 - g^2) sin(l) sin(g l) keeps its sign,
  // so F is strictly monotone and has at most one root there. Below the
  // first pole F vanishes only at 0.
  const roots::SmoothFunction fn = [&c](double x) {
    const auto d = f_1d_derivatives(c, x);
    return roots::ValueAndSlope{d.f, d.d1};
  };

  std::vector<RealIte> out;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Pole& a = poles[i];
    if (a.type == PoleType::Common && a.position <= r) {
      out.push_back({a.position, 3, 1, RootKind::CommonZero, std::nullopt, std::nullopt});
    }
    if (i + 1 == poles.size() || a.position >= r) break;
    const Pole& b = poles[i + 1];
    if (a.type == PoleType::Common || b.type == PoleType::Common) continue;
    const double fa = f_1d(c, a.position);
    const double fb = f_1d(c, b.position);
    if (roots::sign_of(fa) * roots::sign_of(fb) >= 0) continue;
    const double root = roots::safeguarded_newton(fn, a.position, b.position,
                                                  0.5 * (a.position + b.position));
    if (root <= r) {
      out.push_back({root, 1, 1, RootKind::Intersection, std::nullopt, std::nullopt});
    }
  }
  return out;
}

int classify_multiplicity_1d(const Contrast& c, double lambda0, const OneDOptions& opts) {
  if (!std::isfinite(lambda0) || lambda0 <= 0.0) {
    throw DomainError("classify_multiplicity_1d: lambda0 must be > 0");
  }
  if (std::abs(f_1d(c, lambda0)) > opts.root_tol * (1.0 + c.gamma())) {
    throw PreconditionError("classify_multiplicity_1d: lambda0 is not a root of F");
  }
  const double k_real = lambda0 / pi;
  const auto k = static_cast<std::int64_t>(std::nearbyint(k_real));
  if (k < 1 || std::abs(k_real - static_cast<double>(k)) >= opts.common_zero_tol) return 1;
  return is_common_multiple(c, k, opts.common_zero_tol) ? 3 : 1;
}

Eigenpair1D eigenpair_1d(const Contrast& c, double lambda0, const OneDOptions& opts) {
  const int mult = classify_multiplicity_1d(c, lambda0, opts);
  const double g = c.gamma();
  double a, b;
  if (mult == 3) {
    a = g * std::cos(g * lambda0);
    b = std::cos(lambda0);
  } else {
    a = std::sin(g * lambda0);
    b = std::sin(lambda0);
  }
  const double norm = std::hypot(a, b);
  return {a / norm, b / norm};
}

double eigenpair_residual(const Contrast& c, double lambda0, Eigenpair1D pair) {
  const double g = c.gamma();
  return std::abs(pair.a * std::sin(lambda0) - pair.b * std::sin(g * lambda0)) +
         std::abs(pair.a * std::cos(lambda0) - pair.b * g * std::cos(g * lambda0));
}

std::int64_t count_roots(const std::vector<RealIte>& roots, double r, CountMode mode) {
  std::int64_t n = 0;
  for (const auto& root : roots) {
    if (root.lambda > r) break;
    n += mode == CountMode::Algebraic ? root.alg_mult : 1;
  }
  return n;
}

std::int64_t count_1d(const Contrast& c, double r, CountMode mode, const OneDOptions& opts) {
  return count_roots(enumerate_real_ites_1d(c, r, opts), r, mode);
}

}  // namespace itespec
