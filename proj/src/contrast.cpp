#include "itespec/contrast.hpp"

#include <cmath>
#include <numeric>

#include "itespec/errors.hpp"

namespace itespec {

Contrast::Contrast(double gamma, std::optional<Rational> rational)
    : gamma_(gamma), rational_(rational) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw DomainError("contrast gamma must be finite and > 0");
  }
  if (gamma == 1.0) throw DomainError("contrast gamma must differ from 1");
}

Contrast Contrast::from_gamma(double gamma) { return Contrast(gamma, std::nullopt); }

Contrast Contrast::from_index(double m) {
  if (!std::isfinite(m) || m <= 0.0) {
    throw DomainError("index of refraction m must be finite and > 0");
  }
  return Contrast(std::sqrt(m), std::nullopt);
}

Contrast Contrast::from_rational(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0) throw DomainError("rational contrast needs p, q > 0");
  if (std::gcd(p, q) != 1) throw DomainError("rational contrast p/q must be in lowest terms");
  if (p == q) throw DomainError("contrast gamma must differ from 1");
  return Contrast(static_cast<double>(p) / static_cast<double>(q), Rational{p, q});
}

Contrast Contrast::reciprocal() const {
  if (rational_) return from_rational(rational_->q, rational_->p);
  return from_gamma(1.0 / gamma_);
}

std::string to_string(RootKind kind) {
  return kind == RootKind::CommonZero ? "common_zero" : "intersection";
}

}  // namespace itespec
