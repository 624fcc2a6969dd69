#include "itespec/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "itespec/errors.hpp"
#include "itespec/root_finding.hpp"

namespace itespec {
namespace {

void check_args(int l, double lambda) {
  if (l < 0) throw DomainError("momentum l must be >= 0");
  if (!std::isfinite(lambda) || lambda <= 0.0) throw DomainError("lambda must be finite and > 0");
}

std::complex<double> guarded(std::complex<double> d) {
  if (!(std::abs(d) >= 1e-300)) throw NumericalError("scattering denominator vanished");
  return d;
}

}  // namespace

std::complex<double> scattering_denominator(const DimensionConfig& cfg, int l, double lambda) {
  check_args(l, lambda);
  const Order nu = cfg.nu(l);
  const double g = cfg.gamma();
  const auto h = hankel1(nu, lambda);
  const auto h_next = hankel1(Order(nu.value() + 1.0), lambda);
  const auto dh = nu.value() / lambda * h - h_next;
  const auto j = bessel_j_with_prime(nu, g * lambda);
  return dh * j.value - g * h * j.derivative;
}

std::complex<double> s_matrix_entry(const DimensionConfig& cfg, int l, double lambda) {
  const auto d = guarded(scattering_denominator(cfg, l, lambda));
  return -std::conj(d) / d;
}

std::complex<double> s_matrix_entry_reduced(const DimensionConfig& cfg, int l, double lambda) {
  check_args(l, lambda);
  const Order nu = cfg.nu(l);
  const double g = cfg.gamma();
  const double a = 1.0 - 0.5 * cfg.n();
  const std::complex<double> i(0.0, 1.0);

  // reduced f(x) = x^a Z_nu(x), f'(x) = x^a (Z' + a Z / x)
  const double jv = bessel_j(nu, lambda);
  const double jn = bessel_j(Order(nu.value() + 1.0), lambda);
  const double yv = std::imag(hankel1(nu, lambda));
  const double yn = std::imag(hankel1(Order(nu.value() + 1.0), lambda));
  const double djv = nu.value() / lambda * jv - jn;
  const double dyv = nu.value() / lambda * yv - yn;
  const double scale = std::pow(lambda, a);
  const std::complex<double> h1 = scale * (jv + i * yv);
  const std::complex<double> h2 = scale * (jv - i * yv);
  const std::complex<double> dh1 = scale * ((djv + i * dyv) + a * (jv + i * yv) / lambda);
  const std::complex<double> dh2 = scale * ((djv - i * dyv) + a * (jv - i * yv) / lambda);

  const double x = g * lambda;
  const auto inner = bessel_j_with_prime(nu, x);
  const double jg = std::pow(x, a) * inner.value;
  const double djg = std::pow(x, a) * (inner.derivative + a * inner.value / x);

  const auto num = dh2 * jg - g * h2 * djg;
  const auto den = guarded(dh1 * jg - g * h1 * djg);
  return -num / den;
}

std::complex<double> amplitude_entry(const DimensionConfig& cfg, int l, double lambda) {
  const auto d = guarded(scattering_denominator(cfg, l, lambda));
  return -2.0 * d.real() / d;
}

ScatterEntry scatter_entry(const DimensionConfig& cfg, int l, double lambda) {
  const auto d = guarded(scattering_denominator(cfg, l, lambda));
  return {l, lambda, -std::conj(d) / d, -2.0 * d.real() / d};
}

const char* to_string(CoincidenceMismatch::Reason reason) {
  switch (reason) {
    case CoincidenceMismatch::Reason::MissingAmplitudeZero: return "missing_amplitude_zero";
    case CoincidenceMismatch::Reason::MissingIte: return "missing_ite";
    case CoincidenceMismatch::Reason::AmplitudeNotSmall: return "amplitude_not_small";
  }
  return "unknown";
}

CoincidenceReport verify_ite_te_coincidence(const DimensionConfig& cfg, double r,
                                            const CoincidenceOptions& opts) {
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("radius r must be finite and > 0");
  CoincidenceReport report;
  report.radius = r;
  const NdSpectrum spectrum = enumerate_nd(cfg, r, opts.nd);
  const double g = cfg.gamma();

  // One momentum past the enumeration cutoff is scanned too; it must stay empty.
  const int l_end = static_cast<int>(spectrum.momenta.size()) + 1;
  for (int l = 0; l < l_end; ++l) {
    const double nu = cfg.nu(l).value();
    std::vector<double> ites;
    std::vector<int> orders;
    if (l < static_cast<int>(spectrum.momenta.size())) {
      for (const auto& root : spectrum.momenta[static_cast<std::size_t>(l)].roots) {
        ites.push_back(root.lambda);
        orders.push_back(root.alg_mult);
        report.ites.push_back(root);
      }
    }

    // Real zeros of A_l are the zeros of Re D = -F_nu; none lie below nu / max(1, g)
    // because every Bessel zero exceeds its order.
    auto re_d = [&](double x) { return scattering_denominator(cfg, l, x).real(); };
    std::vector<double> found;
    const double start = std::max(nu / std::max(1.0, g), opts.scan_step);
    if (start < r) {
      const auto steps = static_cast<std::int64_t>(std::ceil((r - start) / opts.scan_step));
      double x0 = start;
      double f0 = re_d(x0);
      for (std::int64_t k = 1; k <= steps; ++k) {
        const double x1 = std::min(r, start + static_cast<double>(k) * opts.scan_step);
        const double f1 = re_d(x1);
        if (f1 == 0.0) {
          found.push_back(x1);
        } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
          found.push_back(roots::bisect(re_d, x0, x1));
        }
        if (k % opts.unitarity_stride == 0) {
          const double defect = std::abs(std::abs(s_matrix_entry(cfg, l, x1)) - 1.0);
          report.max_unitarity_defect = std::max(report.max_unitarity_defect, defect);
        }
        x0 = x1;
        f0 = f1;
      }
    }
    for (double z : found) {
      RealIte e;
      e.lambda = z;
      e.momentum = l;
      e.nu = nu;
      e.geom_mult = multiplicity_mu(cfg.n(), l);
      report.amplitude_zeros.push_back(e);
    }

    // Two-pointer match of the sorted lists.
    // A bisected triple zero is only good to about cbrt(eps) relative.
    std::size_t i = 0, j = 0;
    while (i < ites.size() || j < found.size()) {
      const double tol = i < ites.size() && orders[i] == 3 ? opts.triple_match_tol : opts.match_tol;
      if (i < ites.size() && j < found.size() &&
          std::abs(ites[i] - found[j]) <= tol * (1.0 + ites[i])) {
        ++i;
        ++j;
      } else if (j == found.size() || (i < ites.size() && ites[i] < found[j])) {
        report.mismatches.push_back({l, ites[i++], CoincidenceMismatch::Reason::MissingAmplitudeZero});
      } else {
        report.mismatches.push_back({l, found[j++], CoincidenceMismatch::Reason::MissingIte});
      }
    }
    for (double x : ites) {
      const double a = std::abs(amplitude_entry(cfg, l, x));
      report.max_amplitude_at_ite = std::max(report.max_amplitude_at_ite, a);
      if (a > opts.amplitude_tol) {
        report.mismatches.push_back({l, x, CoincidenceMismatch::Reason::AmplitudeNotSmall});
      }
    }
  }
  auto by_lambda = [](const RealIte& a, const RealIte& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && *a.momentum < *b.momentum);
  };
  std::sort(report.ites.begin(), report.ites.end(), by_lambda);
  std::sort(report.amplitude_zeros.begin(), report.amplitude_zeros.end(), by_lambda);
  return report;
}

}  // namespace itespec
