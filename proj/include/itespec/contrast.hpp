#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace itespec {

/// Exact rational contrast p/q with gcd(p, q) = 1.
struct Rational {
  std::int64_t p;
  std::int64_t q;
};

/// Wave-speed contrast gamma = sqrt(m) > 0, gamma != 1. Rational-path logic
/// (exact common-zero tests) is active only when built from p/q; it is never
/// guessed from a floating gamma.
class Contrast {
 public:
  static Contrast from_gamma(double gamma);
  static Contrast from_index(double m);
  static Contrast from_rational(std::int64_t p, std::int64_t q);

  double gamma() const noexcept { return gamma_; }
  const std::optional<Rational>& rational() const noexcept { return rational_; }
  bool is_rational() const noexcept { return rational_.has_value(); }

  /// The reciprocal contrast 1/gamma (rational form preserved).
  Contrast reciprocal() const;

 private:
  Contrast(double gamma, std::optional<Rational> rational);

  double gamma_;
  std::optional<Rational> rational_;
};

enum class RootKind { Intersection, CommonZero };

std::string to_string(RootKind kind);

/// A real interior transmission eigenvalue. `momentum` is empty for the
/// half-line model; for the ball it carries l and the Bessel order nu.
struct RealIte {
  double lambda = 0.0;
  int alg_mult = 1;
  std::int64_t geom_mult = 1;
  RootKind kind = RootKind::Intersection;
  std::optional<int> momentum;
  std::optional<double> nu;
};

enum class CountMode { Geometric, Algebraic };

}  // namespace itespec
