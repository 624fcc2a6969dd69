#include "itespec/ite_nd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "itespec/errors.hpp"
#include "itespec/ite_1d.hpp"
#include "itespec/root_finding.hpp"

namespace itespec {
namespace {

using std::numbers::pi;

// J_nu and J_nu' with closed forms for nu = 1/2 and nu = 3/2.
BesselPair bessel_pair(double nu, double x) {
  if (nu == 0.5 || nu == 1.5) {
    const double s = std::sin(x), co = std::cos(x);
    const double amp = std::sqrt(2.0 / (pi * x));
    const double j_half = amp * s;
    const double dj_half = amp * (co - 0.5 * s / x);
    if (nu == 0.5) return {j_half, dj_half};
    const double j = amp * (s / x - co);
    return {j, j_half - 1.5 / x * j};
  }
  return bessel_j_with_prime(Order(nu), x);
}

struct Determinant {
  double f;
  double slope;
  double j_inner;   // J_nu(lambda)
  double j_outer;   // J_nu(gamma lambda)
  double scale;     // magnitude of the two products in F
};

Determinant evaluate(double g, double nu, double lambda) {
  const auto in = bessel_pair(nu, lambda);
  const auto out = bessel_pair(nu, g * lambda);
  const double a = g * in.value * out.derivative;
  const double b = out.value * in.derivative;
  const double f = a - b;
  return {f, -f / lambda + (1.0 - g * g) * in.value * out.value, in.value, out.value,
          std::abs(a) + std::abs(b)};
}

enum class PoleType { Inner, Outer, Common };

struct Pole {
  double position;
  PoleType type;
};

double binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0.0;
  b = std::min(b, a - b);
  double r = 1.0;
  for (std::int64_t i = 0; i < b; ++i) r = r * static_cast<double>(a - i) / static_cast<double>(i + 1);
  return r;
}

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) throw DomainError("lambda must be finite and > 0");
}

}  // namespace

DimensionConfig::DimensionConfig(int n, double m) : n_(n), m_(m) {
  if (n < 2) throw DomainError("dimension n must be >= 2");
  if (!std::isfinite(m) || m <= 0.0) throw DomainError("index of refraction m must be > 0");
}

double DimensionConfig::gamma() const noexcept { return std::sqrt(m_); }

Contrast DimensionConfig::contrast() const { return Contrast::from_index(m_); }

double DimensionConfig::ball_volume() const {
  return std::pow(pi, 0.5 * n_) / std::tgamma(0.5 * n_ + 1.0);
}

double f_nu(const Contrast& c, Order nu, double lambda) {
  check_lambda(lambda);
  return evaluate(c.gamma(), nu, lambda).f;
}

double f_nu_generic(const Contrast& c, Order nu, double lambda) {
  check_lambda(lambda);
  const double g = c.gamma();
  const auto in = bessel_j_with_prime(nu, lambda);
  const auto out = bessel_j_with_prime(nu, g * lambda);
  return g * in.value * out.derivative - out.value * in.derivative;
}

NuDerivatives f_nu_derivatives(const Contrast& c, Order nu, double lambda) {
  check_lambda(lambda);
  const double g = c.gamma();
  const double k = 1.0 - g * g;
  const double v2 = nu.value() * nu.value();
  const auto in = bessel_j_with_prime(nu, lambda);
  const auto out = bessel_j_with_prime(nu, g * lambda);
  auto second = [v2](double x, BesselPair p) {
    return -p.derivative / x - (1.0 - v2 / (x * x)) * p.value;
  };
  const double in2 = second(lambda, in);
  const double out2 = second(g * lambda, out);
  const double l = lambda;

  const double f = g * in.value * out.derivative - out.value * in.derivative;
  const double d1 = -f / l + k * in.value * out.value;
  const double d2 = f / (l * l) - d1 / l + k * (in.derivative * out.value + g * in.value * out.derivative);
  const double d3 = -2.0 * f / (l * l * l) + 2.0 * d1 / (l * l) - d2 / l +
                    k * (in2 * out.value + 2.0 * g * in.derivative * out.derivative +
                         g * g * in.value * out2);
  return {f, d1, d2, d3};
}

double log_derivative_difference(const Contrast& c, Order nu, double lambda) {
  check_lambda(lambda);
  const double g = c.gamma();
  const auto in = bessel_pair(nu, lambda);
  const auto out = bessel_pair(nu, g * lambda);
  return g * out.derivative / out.value - in.derivative / in.value;
}

std::int64_t NuSpectrum::count(double r) const {
  return count_roots(roots, r, CountMode::Geometric);
}

NuSpectrum enumerate_ites_for_nu(const Contrast& c, Order nu, double r, const NdOptions& opts) {
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("radius r must be finite and > 0");
  const double g = c.gamma();
  NuSpectrum spec;
  spec.nu = nu.value();
  spec.radius = r;
  {
    const ZeroTable table = bessel_zeros_with_successor(nu, std::max(1.0, g) * r);
    spec.zeros.assign(table.zeros().begin(), table.zeros().end());
  }
  const auto& zeros = spec.zeros;

  // Poles of H = J'/J sit at j_k, poles of G = g J'(g .)/J(g .) at j_k / g.
  std::vector<Pole> inner, outer;
  for (double z : zeros) {
    inner.push_back({z, PoleType::Inner});
    outer.push_back({z / g, PoleType::Outer});
  }
  // Each list must reach past r.
  auto truncate = [r](std::vector<Pole>& v) {
    auto it = std::find_if(v.begin(), v.end(), [r](const Pole& p) { return p.position > r; });
    if (it != v.end()) v.erase(it + 1, v.end());
  };
  truncate(inner);
  truncate(outer);

  // Collapse coincident inner/outer pairs into common zeros.
  std::vector<Pole> poles;
  {
    std::size_t j = 0;
    std::vector<bool> outer_used(outer.size(), false);
    for (const auto& p : inner) {
      while (j + 1 < outer.size() && outer[j + 1].position <= p.position) ++j;
      bool common = false;
      for (std::size_t cand : {j, j + 1}) {
        if (cand >= outer.size() || outer_used[cand]) continue;
        const double y = outer[cand].position;
        if (std::abs(y - p.position) > 1e-6 * (1.0 + p.position)) continue;
        const double tol = opts.common_zero_tol * (1.0 + p.position);
        if (std::abs(bessel_j(nu, g * p.position)) <= tol &&
            std::abs(bessel_j(nu, p.position)) <= tol) {
          outer_used[cand] = true;
          common = true;
          break;
        }
      }
      poles.push_back({p.position, common ? PoleType::Common : PoleType::Inner});
    }
    for (std::size_t k = 0; k < outer.size(); ++k) {
      if (!outer_used[k]) poles.push_back(outer[k]);
    }
    std::sort(poles.begin(), poles.end(),
              [](const Pole& a, const Pole& b) { return a.position < b.position; });
    truncate(poles);
  }

  const roots::SmoothFunction fn = [g, v = nu.value()](double x) {
    const auto d = evaluate(g, v, x);
    return roots::ValueAndSlope{d.f, d.slope};
  };

  // P = G - H tends to -inf just right of an inner pole and +inf just right of
  // an outer one (mirrored on the left); at a common pole it has a finite limit.
  auto limit_sign = [&](const Pole& p, double toward) {
    switch (p.type) {
      case PoleType::Inner: return toward > p.position ? -1 : 1;
      case PoleType::Outer: return toward > p.position ? 1 : -1;
      default: {
        const double delta = 1e-4 * std::abs(toward - p.position);
        const double x = p.position + (toward > p.position ? delta : -delta);
        return roots::sign_of(log_derivative_difference(c, nu, x));
      }
    }
  };

  // Nothing below the first pole: (lambda F)' = (1-g^2) lambda J(lambda) J(g lambda)
  // keeps one sign there and lambda F vanishes at 0.
  for (std::size_t i = 0; i + 1 < poles.size(); ++i) {
    const Pole& a = poles[i];
    const Pole& b = poles[i + 1];
    if (a.type == PoleType::Common && a.position <= r) {
      spec.roots.push_back({a.position, 3, 1, RootKind::CommonZero, std::nullopt, nu.value()});
    }
    if (a.position >= r) break;

    const bool expected = limit_sign(a, b.position) != limit_sign(b, a.position);
    const double width = b.position - a.position;
    const double lo = a.position + (a.type == PoleType::Common ? 1e-4 * width : 0.0);
    const double hi = b.position - (b.type == PoleType::Common ? 1e-4 * width : 0.0);
    const double f_lo = fn(lo).value;
    const double f_hi = fn(hi).value;

    std::optional<double> root;
    if (roots::sign_of(f_lo) * roots::sign_of(f_hi) < 0) {
      root = roots::safeguarded_newton(fn, lo, hi, 0.5 * (lo + hi));
      if (!expected) ++spec.unexpected;
    } else if (expected) {
      const auto [x, fx] = roots::golden_section_min(
          [g, v = nu.value()](double t) { return std::abs(evaluate(g, v, t).f); }, lo, hi,
          1e-12 * (1.0 + hi));
      const auto d = evaluate(g, nu.value(), x);
      if (fx <= opts.tangency_tol * d.scale) {
        root = x;
        ++spec.near_tangent;
      }
    }
    if (root && *root <= r) {
      spec.roots.push_back({*root, 1, 1, RootKind::Intersection, std::nullopt, nu.value()});
    }
  }
  return spec;
}

std::int64_t multiplicity_mu(int n, int l) {
  if (n < 2 || l < 0) throw DomainError("multiplicity_mu needs n >= 2 and l >= 0");
  if (n == 2) return l == 0 ? 1 : 2;
  const double value = (2.0 * l + n - 2.0) / (n - 2.0) * binomial(l + n - 3, n - 3);
  return static_cast<std::int64_t>(std::llround(value));
}

std::int64_t NdSpectrum::count(double r) const {
  std::int64_t total = 0;
  for (const auto& s : momenta) total += s.mu * s.count(r);
  return total;
}

std::int64_t NdSpectrum::dirichlet_count(double speed, double r) const {
  std::int64_t total = 0;
  const double x = speed * r;
  for (const auto& s : momenta) {
    const auto k = std::upper_bound(s.zeros.begin(), s.zeros.end(), x) - s.zeros.begin();
    total += s.mu * static_cast<std::int64_t>(k);
  }
  return total;
}

std::vector<RealIte> NdSpectrum::merged() const {
  std::vector<RealIte> all;
  for (const auto& s : momenta) all.insert(all.end(), s.roots.begin(), s.roots.end());
  std::stable_sort(all.begin(), all.end(), [](const RealIte& a, const RealIte& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && *a.momentum < *b.momentum);
  });
  return all;
}

NdSpectrum enumerate_nd(const DimensionConfig& cfg, double r, const NdOptions& opts) {
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("radius r must be finite and > 0");
  const Contrast c = cfg.contrast();
  const double reach = std::max(1.0, c.gamma()) * r;

  // j_{nu,1} grows with nu, so the first momentum whose first zero exceeds
  // the reach ends the sum.
  int l_end = 0;
  while (first_bessel_zero(cfg.nu(l_end)) <= reach) ++l_end;

  NdSpectrum out;
  out.n = cfg.n();
  out.gamma = c.gamma();
  out.radius = r;
  out.momenta.resize(static_cast<std::size_t>(l_end));

  auto work = [&](int l) {
    NuSpectrum s = enumerate_ites_for_nu(c, cfg.nu(l), r, opts);
    s.l = l;
    s.mu = multiplicity_mu(cfg.n(), l);
    for (auto& root : s.roots) {
      root.momentum = l;
      root.geom_mult = s.mu;
    }
    out.momenta[static_cast<std::size_t>(l)] = std::move(s);
  };

  const int threads = std::clamp(opts.threads, 1, std::max(1, l_end));
  if (threads == 1) {
    for (int l = 0; l < l_end; ++l) work(l);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (int l = next++; l < l_end && !failed; l = next++) {
            try {
              work(l);
            } catch (...) {
              if (!failed.exchange(true)) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

std::int64_t count_nd(const DimensionConfig& cfg, double r, const NdOptions& opts) {
  return enumerate_nd(cfg, r, opts).count(r);
}

std::int64_t dirichlet_count(const DimensionConfig& cfg, double speed, double r) {
  if (!std::isfinite(r) || r <= 0.0 || !std::isfinite(speed) || speed <= 0.0) {
    throw DomainError("dirichlet_count needs speed > 0 and r > 0");
  }
  const double x = speed * r;
  std::int64_t total = 0;
  for (int l = 0;; ++l) {
    const Order nu = cfg.nu(l);
    if (first_bessel_zero(nu) > x) break;
    total += multiplicity_mu(cfg.n(), l) * static_cast<std::int64_t>(bessel_zeros(nu, x).size());
  }
  return total;
}

WeylCoefficient weyl_coefficient(const DimensionConfig& cfg) {
  const double omega = cfg.ball_volume();
  const double value = std::pow(2.0 * pi, -cfg.n()) * omega * omega *
                       std::abs(1.0 - std::pow(cfg.m(), 0.5 * cfg.n()));
  return {value, cfg.m() == 1.0};
}

CountReport weyl_report(const NdSpectrum& spectrum, const DimensionConfig& cfg,
                        std::span<const double> grid) {
  check_radius_grid(grid);
  if (grid.back() > spectrum.radius) {
    throw DomainError("weyl_report: grid extends beyond the enumerated radius");
  }
  std::vector<double> radii(grid.begin(), grid.end());
  std::vector<std::int64_t> counts, diff;
  for (double r : radii) {
    counts.push_back(spectrum.count(r));
    const std::int64_t n1 = spectrum.dirichlet_count(1.0, r);
    const std::int64_t ng = spectrum.dirichlet_count(spectrum.gamma, r);
    diff.push_back(n1 > ng ? n1 - ng : ng - n1);
  }
  return make_count_report(cfg.n(), weyl_coefficient(cfg).value, std::move(radii),
                           std::move(counts), std::move(diff));
}

CountReport weyl_report(const DimensionConfig& cfg, std::span<const double> grid,
                        const NdOptions& opts) {
  check_radius_grid(grid);
  return weyl_report(enumerate_nd(cfg, grid.back(), opts), cfg, grid);
}

}  // namespace itespec
