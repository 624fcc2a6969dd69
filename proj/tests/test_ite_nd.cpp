#include "itespec/ite_nd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "itespec/errors.hpp"
#include "itespec/ite_1d.hpp"
#include "oracles.hpp"

namespace itespec {
namespace {

using oracle::kPi;

// Dimension of degree-l harmonic polynomials in n variables.
std::int64_t harmonic_dimension(int n, int l) {
  auto binom = [](std::int64_t a, std::int64_t b) -> std::int64_t {
    if (b < 0 || b > a) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1);
}

double f1d_times(double g, double x) { return oracle::f1d(g, x); }

TEST(DimensionConfig, Basics) {
  EXPECT_THROW(DimensionConfig(1, 4.0), DomainError);
  EXPECT_THROW(DimensionConfig(3, 0.0), DomainError);
  EXPECT_DOUBLE_EQ(DimensionConfig(2, 4).ball_volume(), kPi);
  EXPECT_DOUBLE_EQ(DimensionConfig(3, 4).ball_volume(), 4 * kPi / 3);
  EXPECT_DOUBLE_EQ(DimensionConfig(3, 4).gamma(), 2.0);
  EXPECT_EQ(DimensionConfig(3, 4).nu(0).value(), 0.5);
  EXPECT_EQ(DimensionConfig(2, 4).nu(3).value(), 3.0);
  EXPECT_THROW(DimensionConfig(3, 1.0).contrast(), DomainError);
}

TEST(FNu, HalfOrderReducesToOneDimensional) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> gs(0.1, 4.0), xs(0.05, 200.0);
  for (int i = 0; i < 500; ++i) {
    const double g = gs(rng), x = xs(rng);
    const auto c = Contrast::from_gamma(g);
    const double expected = f1d_times(g, x);
    const double scale = std::sqrt(g) + g * std::sqrt(g);
    EXPECT_NEAR(f_nu(c, Order(0.5), x) * kPi * std::sqrt(g) * x / 2, expected, 1e-12 * scale);
    EXPECT_NEAR(f_nu_generic(c, Order(0.5), x) * kPi * std::sqrt(g) * x / 2, expected, 1e-11 * scale);
  }
}

TEST(FNu, FastPathMatchesGeneric) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> gs(0.1, 4.0), xs(0.05, 300.0);
  for (int i = 0; i < 500; ++i) {
    const auto c = Contrast::from_gamma(gs(rng));
    const double x = xs(rng);
    for (double nu : {0.5, 1.5}) {
      const double a = f_nu(c, Order(nu), x), b = f_nu_generic(c, Order(nu), x);
      const double scale = (1 + c.gamma()) * 2.0 / (kPi * x * std::sqrt(c.gamma()));
      EXPECT_NEAR(a, b, 1e-10 * scale) << nu << " " << x;
    }
  }
}

TEST(FNu, VanishesAtCommonBesselZeros) {
  const Order nu(5.5);
  const auto z = oracle::boost_zeros(5.5, 40.0);
  const auto c = Contrast::from_gamma(z[0] / z[2]);
  EXPECT_NEAR(f_nu(c, nu, z[2]), 0.0, 1e-15);
}

TEST(FNu, RejectsNonPositiveLambda) {
  const auto c = Contrast::from_gamma(2);
  EXPECT_THROW(f_nu(c, Order(1), 0.0), DomainError);
  EXPECT_THROW(f_nu(c, Order(1), -3.0), DomainError);
}

TEST(FNu, DerivativeIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gs(0.2, 3.0), nus(0.0, 30.0), xs(0.5, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double g = gs(rng);
    const auto c = Contrast::from_gamma(g);
    const Order nu(nus(rng));
    const double x = xs(rng);
    const double h = 1e-3 * std::min(1.0, x / (1 + nu.value()));
    auto f = [&](double t) { return f_nu(c, nu, t); };
    const double fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    const auto in = bessel_j_with_prime(nu, x), out = bessel_j_with_prime(nu, g * x);
    const double scale = (1 + g * g) * (std::abs(in.value) + std::abs(in.derivative)) *
                         (std::abs(out.value) + std::abs(out.derivative));
    if (scale < 1e-280) continue;
    const double residual = fd + f(x) / x - (1 - g * g) * in.value * out.value;
    EXPECT_LE(std::abs(residual), 1e-9 * scale) << "nu=" << nu.value() << " x=" << x << " g=" << g;
  }
}

TEST(FNu, HigherDerivativesMatchDifferences) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> gs(0.2, 3.0), nus(0.0, 20.0), xs(1.0, 60.0);
  for (int i = 0; i < 300; ++i) {
    const auto c = Contrast::from_gamma(gs(rng));
    const Order nu(nus(rng));
    const double x = xs(rng), h = 1e-4 * std::min(1.0, x / (1 + nu.value()));
    const auto d = f_nu_derivatives(c, nu, x);
    const auto p = f_nu_derivatives(c, nu, x + h), m = f_nu_derivatives(c, nu, x - h);
    const double s = std::abs(d.f) + std::abs(d.d1) + std::abs(d.d2) + std::abs(d.d3) + 1e-300;
    EXPECT_NEAR(d.f, f_nu(c, nu, x), 1e-14 * s);
    EXPECT_NEAR(d.d1, (p.f - m.f) / (2 * h), 1e-6 * s);
    EXPECT_NEAR(d.d2, (p.d1 - m.d1) / (2 * h), 1e-6 * s);
    EXPECT_NEAR(d.d3, (p.d2 - m.d2) / (2 * h), 1e-6 * s);
  }
}

// gamma = j_{nu,1} / j_{nu,3} makes j_{nu,3} a
// common zero of J_nu(lambda) and J_nu(gamma lambda).
TEST(EnumerateNu, TripleRootAtThirdZero) {
  const Order nu(5.5);
  const auto z = oracle::boost_zeros(5.5, 40.0);
  const double g = z[0] / z[2];
  const auto c = Contrast::from_gamma(g);
  const auto spec = enumerate_ites_for_nu(c, nu, 30.0);
  const auto it = std::find_if(spec.roots.begin(), spec.roots.end(),
                               [](const RealIte& r) { return r.kind == RootKind::CommonZero; });
  ASSERT_NE(it, spec.roots.end());
  EXPECT_NEAR(it->lambda, 16.35, 5e-3);
  EXPECT_NEAR(it->lambda, z[2], 1e-12 * z[2]);
  EXPECT_EQ(it->alg_mult, 3);
  for (const auto& r : spec.roots) {
    if (&r != &*it) EXPECT_EQ(r.alg_mult, 1);
  }
  // certificate
  const auto d = f_nu_derivatives(c, nu, it->lambda);
  const auto in = bessel_j_with_prime(nu, it->lambda), out = bessel_j_with_prime(nu, g * it->lambda);
  const double scale = (1 + g * g) * std::abs(in.derivative) * std::abs(out.derivative);
  EXPECT_LT(std::abs(d.f), 1e-6 * scale);
  EXPECT_LT(std::abs(d.d1), 1e-6 * scale);
  EXPECT_LT(std::abs(d.d2), 1e-6 * scale);
  const double expected3 = 2 * g * (1 - g * g) * in.derivative * out.derivative;
  EXPECT_NEAR(d.d3, expected3, 1e-6 * std::abs(expected3));
  EXPECT_GT(std::abs(d.d3), 0.1 * scale);
}

TEST(EnumerateNu, HalfOrderMatchesOneDimensional) {
  for (double g : {0.5, 2.0, std::sqrt(2.0), 0.375, 3.0}) {
    const auto c = Contrast::from_gamma(g);
    const auto nd = enumerate_ites_for_nu(c, Order(0.5), 100.0);
    const auto od = enumerate_real_ites_1d(c, 100.0);
    ASSERT_EQ(nd.roots.size(), od.size()) << g;
    for (std::size_t i = 0; i < od.size(); ++i) {
      EXPECT_NEAR(nd.roots[i].lambda, od[i].lambda, 1e-9);
      EXPECT_EQ(nd.roots[i].alg_mult, od[i].alg_mult);
    }
  }
}

void expect_family_matches_oracle(double nu0, int count, double g, double r) {
  const auto ref = oracle::scan_nd_family(nu0, count, g, r);
  const auto c = Contrast::from_gamma(g);
  for (int k = 0; k < count; ++k) {
    const double nu = nu0 + k;
    if (nu == 0.0) continue;
    const auto spec = enumerate_ites_for_nu(c, Order(nu), r);
    const auto& want = ref[static_cast<std::size_t>(k)];
    ASSERT_EQ(spec.roots.size(), want.size()) << "nu=" << nu << " g=" << g;
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_NEAR(spec.roots[i].lambda, want[i].lambda, 1e-9 * (1 + want[i].lambda)) << "nu=" << nu << " g=" << g;
      EXPECT_EQ(spec.roots[i].alg_mult, want[i].mult) << "nu=" << nu << " g=" << g << " at " << want[i].lambda;
    }
  }
}

TEST(EnumerateNu, MatchesPoleAwareDenseScanHalfIntegerOrders) {
  for (double g : {0.5, std::sqrt(2.0) / 2, 2.0}) expect_family_matches_oracle(0.5, 31, g, 120.0);
}

TEST(EnumerateNu, MatchesPoleAwareDenseScanIntegerOrders) {
  for (double g : {0.5, std::sqrt(2.0) / 2, 2.0}) expect_family_matches_oracle(0.0, 31, g, 120.0);
}

TEST(EnumerateNu, SlopeLawAtSimpleRoots) {
  for (double g : {0.5, std::sqrt(2.0) / 2, 2.0, 1.3}) {
    const auto c = Contrast::from_gamma(g);
    for (double nu : {0.5, 1.0, 4.5, 10.0, 22.5}) {
      for (const auto& root : enumerate_ites_for_nu(c, Order(nu), 120.0).roots) {
        if (root.alg_mult != 1) continue;
        const double x = root.lambda, h = 1e-6;
        const double slope = (log_derivative_difference(c, Order(nu), x + h) -
                              log_derivative_difference(c, Order(nu), x - h)) / (2 * h);
        EXPECT_NEAR(slope, 1 - g * g, 1e-5) << "g=" << g << " nu=" << nu << " x=" << x;
      }
    }
  }
}

TEST(EnumerateNu, TripleRootsCarryCertificates) {
  for (double g : {0.5, 2.0}) {
    const auto c = Contrast::from_gamma(g);
    for (double nu : {0.5, 1.5, 2.5}) {
      for (const auto& root : enumerate_ites_for_nu(c, Order(nu), 120.0).roots) {
        if (root.alg_mult != 3) continue;
        EXPECT_LT(std::abs(bessel_j(Order(nu), root.lambda)), 1e-9 * (1 + root.lambda));
        EXPECT_LT(std::abs(bessel_j(Order(nu), g * root.lambda)), 1e-9 * (1 + root.lambda));
        const auto d = f_nu_derivatives(c, Order(nu), root.lambda);
        const double s = std::abs(d.d3);
        EXPECT_GT(s, 1e-4);
        EXPECT_LT(std::abs(d.f) + std::abs(d.d1) + std::abs(d.d2), 1e-6 * (1 + s));
      }
    }
  }
}

TEST(EnumerateNu, InterleavingCount) {
  for (double g : {0.5, std::sqrt(2.0) / 2, 0.3, 0.9}) {
    const auto c = Contrast::from_gamma(g);
    for (double nu : {0.0, 0.5, 1.0, 3.5, 8.0, 15.5, 30.0}) {
      const auto spec = enumerate_ites_for_nu(c, Order(nu), 150.0);
      for (double r : {10.0, 37.0, 80.0, 150.0}) {
        const auto inner = static_cast<std::int64_t>(oracle::boost_zeros(nu, r).size());
        const auto outer = static_cast<std::int64_t>(oracle::boost_zeros(nu, g * r).size());
        const auto d = spec.count(r) - (inner - outer);
        EXPECT_GE(d, -1) << g << " " << nu << " " << r;
        EXPECT_LE(d, 1) << g << " " << nu << " " << r;
      }
    }
  }
}

TEST(EnumerateNu, RescalingDuality) {
  for (double g : {2.0, std::sqrt(2.0), 3.7}) {
    const auto c = Contrast::from_gamma(g);
    const auto inv = Contrast::from_gamma(1 / g);
    for (double nu : {0.5, 2.0, 7.5, 13.0}) {
      const double r = 60.0;
      const auto a = enumerate_ites_for_nu(c, Order(nu), r).roots;
      auto b = enumerate_ites_for_nu(inv, Order(nu), g * r).roots;
      // a root sitting right on g r may fall either side after rescaling
      ASSERT_EQ(a.size(), b.size()) << g << " " << nu;
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i].lambda, b[i].lambda / g, 1e-9 * (1 + a[i].lambda));
        EXPECT_EQ(a[i].alg_mult, b[i].alg_mult);
      }
    }
  }
}

TEST(EnumerateNu, RootsAreSortedAndInRange) {
  const auto c = Contrast::from_gamma(1.7);
  const auto spec = enumerate_ites_for_nu(c, Order(3.0), 75.0);
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    EXPECT_LE(spec.roots[i].lambda, 75.0);
    if (i) EXPECT_LT(spec.roots[i - 1].lambda, spec.roots[i].lambda);
  }
  EXPECT_EQ(spec.near_tangent, 0);
  EXPECT_EQ(spec.unexpected, 0);
  EXPECT_THROW(enumerate_ites_for_nu(c, Order(3.0), 0.0), DomainError);
}

TEST(Multiplicity, Examples) {
  for (int l = 0; l < 4; ++l) EXPECT_EQ(multiplicity_mu(3, l), 2 * l + 1);
  EXPECT_EQ(multiplicity_mu(2, 0), 1);
  EXPECT_EQ(multiplicity_mu(2, 5), 2);
  EXPECT_EQ(multiplicity_mu(4, 1), 4);
  EXPECT_THROW(multiplicity_mu(1, 0), DomainError);
  EXPECT_THROW(multiplicity_mu(3, -1), DomainError);
}

TEST(Multiplicity, MatchesHarmonicPolynomialCount) {
  for (int n = 2; n <= 8; ++n) {
    for (int l = 0; l <= 40; ++l) EXPECT_EQ(multiplicity_mu(n, l), harmonic_dimension(n, l)) << n << " " << l;
  }
}

TEST(CountNd, ZeroBelowFirstPossibleRoot) {
  for (double m : {4.0, 0.25, 2.0}) {
    const DimensionConfig cfg(3, m);
    const double g = std::sqrt(m);
    EXPECT_EQ(count_nd(cfg, 0.99 * std::min(kPi, kPi / g)), 0);
  }
}

TEST(CountNd, MonotoneAndConsistent) {
  const DimensionConfig cfg(3, 4.0);
  const auto spec = enumerate_nd(cfg, 60.0);
  std::int64_t prev = 0;
  for (double r = 1.0; r <= 60.0; r += 0.9) {
    const auto n = spec.count(r);
    EXPECT_GE(n, prev);
    prev = n;
  }
  EXPECT_EQ(spec.count(60.0), count_nd(cfg, 60.0));
  EXPECT_EQ(spec.count(33.3), count_nd(cfg, 33.3));
}

TEST(CountNd, ThreeDimensionsAgainstPerOrderOracle) {
  const DimensionConfig cfg(3, 4.0);
  const double r = 100.0;
  // orders up to the cutoff: first zero of J_nu must lie below 2 r
  int count = 0;
  while (boost::math::cyl_bessel_j_zero(0.5 + count, 1) <= 2 * r) ++count;
  const auto ref = oracle::scan_nd_family(0.5, count, 2.0, r, 2e-3);
  std::int64_t expected = 0;
  for (int l = 0; l < count; ++l) expected += (2 * l + 1) * static_cast<std::int64_t>(ref[static_cast<std::size_t>(l)].size());
  const auto n = count_nd(cfg, r);
  EXPECT_EQ(n, expected);
  EXPECT_LE(std::abs(n - 14 * r * r * r / (9 * kPi)), 3.0 * r * r);
}

TEST(CountNd, ThreadedRunIsIdentical) {
  const DimensionConfig cfg(2, 4.0);
  NdOptions one, four;
  four.threads = 4;
  const auto a = enumerate_nd(cfg, 80.0, one).merged();
  const auto b = enumerate_nd(cfg, 80.0, four).merged();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    EXPECT_EQ(a[i].momentum, b[i].momentum);
  }
}

TEST(CountNd, MergedOrderAndMultiplicities) {
  const DimensionConfig cfg(3, 0.25);
  const auto all = enumerate_nd(cfg, 40.0).merged();
  for (std::size_t i = 0; i < all.size(); ++i) {
    ASSERT_TRUE(all[i].momentum.has_value());
    EXPECT_EQ(all[i].geom_mult, multiplicity_mu(3, *all[i].momentum));
    EXPECT_DOUBLE_EQ(*all[i].nu, *all[i].momentum + 0.5);
    if (i) {
      EXPECT_TRUE(all[i - 1].lambda < all[i].lambda ||
                  (all[i - 1].lambda == all[i].lambda && *all[i - 1].momentum < *all[i].momentum));
    }
  }
}

TEST(DirichletCount, Examples) {
  const DimensionConfig cfg(3, 4.0);
  EXPECT_EQ(dirichlet_count(cfg, 1.0, 3.2), 1);
  for (double r : {5.0, 17.5, 40.0}) EXPECT_EQ(dirichlet_count(cfg, 2.0, r), dirichlet_count(cfg, 1.0, 2 * r));
  const auto spec = enumerate_nd(cfg, 40.0);
  for (double r : {5.0, 17.5, 40.0}) {
    EXPECT_EQ(spec.dirichlet_count(1.0, r), dirichlet_count(cfg, 1.0, r));
    EXPECT_EQ(spec.dirichlet_count(2.0, r), dirichlet_count(cfg, 2.0, r));
  }
  EXPECT_THROW(dirichlet_count(cfg, 1.0, 0.0), DomainError);
}

TEST(DirichletCount, ClassicalBallWeylBounded) {
  const DimensionConfig cfg(3, 4.0);
  const double omega = 4 * kPi / 3;
  const double c = omega * omega / std::pow(2 * kPi, 3);
  std::vector<double> scaled;
  for (double r = 20; r <= 150; r += 10) scaled.push_back(std::abs(dirichlet_count(cfg, 1.0, r) - c * r * r * r) / (r * r));
  const std::size_t q = scaled.size() / 4;
  const double first = *std::max_element(scaled.begin(), scaled.begin() + static_cast<long>(q));
  const double last = *std::max_element(scaled.end() - static_cast<long>(q), scaled.end());
  EXPECT_LE(*std::max_element(scaled.begin(), scaled.end()), 1.0);
  EXPECT_LE(last, first + 0.1);
}

TEST(WeylCoefficient, Examples) {
  EXPECT_NEAR(weyl_coefficient(DimensionConfig(3, 4)).value, 14 / (9 * kPi), 1e-15);
  EXPECT_NEAR(weyl_coefficient(DimensionConfig(2, 4)).value, 0.75, 1e-15);
  EXPECT_NEAR(weyl_coefficient(DimensionConfig(2, 0.25)).value, 3.0 / 16, 1e-15);
  const auto degenerate = weyl_coefficient(DimensionConfig(5, 1));
  EXPECT_EQ(degenerate.value, 0.0);
  EXPECT_TRUE(degenerate.degenerate);
  EXPECT_FALSE(weyl_coefficient(DimensionConfig(3, 4)).degenerate);
}

TEST(WeylReport, TwoDimensionsFit) {
  const DimensionConfig cfg(2, 4.0);
  std::vector<double> grid;
  for (int r = 30; r <= 300; r += 15) grid.push_back(r);
  const auto rep = weyl_report(cfg, grid);
  ASSERT_EQ(rep.size(), grid.size());
  EXPECT_NEAR(rep.fit_coefficient, 0.75, 0.075);
  std::vector<double> first_equality;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    EXPECT_TRUE(std::isfinite(rep.residual_scaled[i]));
    if (i) EXPECT_GE(rep.counts[i], rep.counts[i - 1]);
    EXPECT_DOUBLE_EQ(rep.weyl[i], 0.75 * grid[i] * grid[i]);
    first_equality.push_back(std::abs(rep.counts[i] - rep.dirichlet_diff[i]) / grid[i]);
  }
  const std::size_t q = first_equality.size() / 4;
  const double first = *std::max_element(first_equality.begin(), first_equality.begin() + static_cast<long>(q));
  const double last = *std::max_element(first_equality.end() - static_cast<long>(q), first_equality.end());
  EXPECT_LE(last, first + 1.0);
  EXPECT_LE(*std::max_element(first_equality.begin(), first_equality.end()), 2.0 * 2.0);
}

TEST(WeylReport, RejectsBadGrid) {
  const DimensionConfig cfg(2, 4.0);
  EXPECT_THROW(weyl_report(cfg, std::vector<double>{10, 10}), DomainError);
  EXPECT_THROW(weyl_report(cfg, std::vector<double>{-1, 10}), DomainError);
  const auto spec = enumerate_nd(cfg, 20.0);
  EXPECT_THROW(weyl_report(spec, cfg, std::vector<double>{10, 30}), DomainError);
}

TEST(PowerLawFit, ExactData) {
  std::vector<double> r{1, 2, 3, 4};
  std::vector<std::int64_t> n{3, 24, 81, 192};
  EXPECT_NEAR(fit_power_law(r, n, 3), 3.0, 1e-14);
}

}  // namespace
}  // namespace itespec
