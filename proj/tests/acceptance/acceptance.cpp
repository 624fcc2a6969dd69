// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "itespec/ite_1d.hpp"
#include "itespec/ite_1d_complex.hpp"
#include "itespec/ite_nd.hpp"
#include "itespec/scattering.hpp"
#include "oracles.hpp"

using namespace itespec;
using oracle::kPi;

namespace {

int g_threads = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// No growth: max of the last quarter at most max of the first quarter plus slack.
bool no_growth(const std::vector<double>& v, double slack) {
  const std::size_t q = std::max<std::size_t>(1, v.size() / 4);
  const double first = *std::max_element(v.begin(), v.begin() + static_cast<long>(q));
  const double last = *std::max_element(v.end() - static_cast<long>(q), v.end());
  return last <= first + slack;
}

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  for (double r = lo; r <= hi + 1e-9; r += step) v.push_back(r);
  return v;
}

Outcome closed_form(double g, const std::function<double(double)>& expected) {
  const auto c = Contrast::from_gamma(g);
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double x = i * 1e-2;
    worst = std::max(worst, std::abs(f_1d(c, x) - expected(x)));
  }
  return {worst <= 1e-12, fmt("max deviation %.3e (tol 1e-12)", worst)};
}

Outcome c1() { return closed_form(2.0, [](double x) { return -2 * std::pow(std::sin(x), 3); }); }

Outcome c2() {
  return closed_form(3.0, [](double x) { return -8 * std::cos(x) * std::pow(std::sin(x), 3); });
}

Outcome c3() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> gs(0.1, 5.0), xs(0.01, 50.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double g = gs(rng);
    if (std::abs(g - 1) < 1e-3) g += 0.01;
    const auto c = Contrast::from_gamma(g);
    const double x = xs(rng);
    const auto d = f_1d_derivatives(c, x);
    const auto p = f_1d_derivatives(c, x + h), m = f_1d_derivatives(c, x - h);
    const double errs[] = {
        std::abs(d.d1 - (p.f - m.f) / (2 * h)) / std::max(1.0, std::abs(d.d1)),
        std::abs(d.d2 - (p.d1 - m.d1) / (2 * h)) / std::max(1.0, std::abs(d.d2)),
        std::abs(d.d3 - (p.d2 - m.d2) / (2 * h)) / std::max(1.0, std::abs(d.d3)),
    };
    for (double e : errs) worst = std::max(worst, e);
  }
  return {worst <= 1e-6, fmt("max relative deviation %.3e over 1000 samples (tol 1e-6)", worst)};
}

Outcome c4() {
  bool ok = true;
  std::string detail;
  for (double g : {std::sqrt(2.0), 3.0 / 8, 5.0 / 3}) {
    const auto c = Contrast::from_gamma(g);
    const auto roots = enumerate_real_ites_1d(c, 1000.0);
    std::vector<double> dev;
    for (double r : range(50, 1000, 50)) {
      dev.push_back(std::abs(count_roots(roots, r, CountMode::Geometric) - std::abs(1 - g) * r / kPi));
    }
    const double worst = *std::max_element(dev.begin(), dev.end());
    const bool trend = no_growth(dev, 1.0);
    ok = ok && worst <= 4 && trend;
    detail += fmt("g=%.4f max %.3f%s; ", g, worst, trend ? "" : " (growth)");
  }
  return {ok, detail + "(tol 4)"};
}

Outcome c5() {
  const auto c = Contrast::from_rational(3, 8);
  const auto roots = enumerate_real_ites_1d(c, 1000.0);
  std::vector<double> dev;
  for (double r : range(50, 1000, 50)) {
    dev.push_back(std::abs(count_roots(roots, r, CountMode::Algebraic) - (5.0 / 8 + 2.0 / 8) * r / kPi));
  }
  const double worst = *std::max_element(dev.begin(), dev.end());
  return {worst <= 4, fmt("max |N_alg - 7r/(8pi)| = %.3f (tol 4)", worst)};
}

Outcome c6() {
  bool ok = true;
  std::string detail;
  for (double g : {std::sqrt(2.0), 3.0 / 8, 5.0 / 3, 2.0, 0.7}) {
    const auto roots = enumerate_real_ites_1d(Contrast::from_gamma(g), 200.0);
    const auto ref = oracle::scan_1d(g, 200.0);
    double worst = 0.0;
    bool same = roots.size() == ref.size();
    for (std::size_t i = 0; same && i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(roots[i].lambda - ref[i].lambda));
      same = roots[i].alg_mult == ref[i].mult;
    }
    ok = ok && same && worst <= 1e-9;
    detail += fmt("g=%.4f %zu/%zu roots, max %.1e; ", g, roots.size(), ref.size(), worst);
  }
  return {ok, detail};
}

Outcome c7() {
  const double g = std::sqrt(2.0);
  const auto zeros = enumerate_complex_ites(Contrast::from_gamma(g), 400.0);
  const auto rel = [&](double R) {
    const double pred = (1 + g) * R / kPi;
    return std::abs(static_cast<double>(total_multiplicity(zeros, R)) - pred) / pred;
  };
  const double r200 = rel(200), r400 = rel(400);
  return {r200 <= 0.15 && r400 <= 0.10,
          fmt("R=200 N=%lld rel %.4f (tol 0.15); R=400 N=%lld rel %.4f (tol 0.10)",
              static_cast<long long>(total_multiplicity(zeros, 200)), r200,
              static_cast<long long>(total_multiplicity(zeros, 400)), r400)};
}

Outcome c8() {
  int nonzero = 0, total = 0;
  for (double g : {std::sqrt(2.0), 3.0 / 8}) {
    const auto c = Contrast::from_gamma(g);
    const double C = strip_bound(c);
    for (int k = 0; k < 5; ++k) {
      const double a = 1 + 37.0 * k;
      for (double sign : {1.0, -1.0}) {
        const double lo = C + 0.05 + 0.5 * k, hi = lo + 2 + k;
        const Rectangle rect(a, a + 10 + 3 * k, sign > 0 ? lo : -hi, sign > 0 ? hi : -lo);
        nonzero += winding_count(c, rect) != 0;
        ++total;
      }
    }
  }
  return {nonzero == 0 && total == 20, fmt("%d of %d rectangles with nonzero winding", nonzero, total)};
}

Outcome c9() {
  double worst = 0.0;
  bool same = true;
  std::string detail;
  for (double g : {0.5, 2.0}) {
    const DimensionConfig cfg(3, g * g);
    const auto nd = enumerate_ites_for_nu(cfg.contrast(), cfg.nu(0), 100.0).roots;
    const auto od = enumerate_real_ites_1d(Contrast::from_gamma(g), 100.0);
    same = same && nd.size() == od.size();
    for (std::size_t i = 0; same && i < od.size(); ++i) {
      worst = std::max(worst, std::abs(nd[i].lambda - od[i].lambda));
      same = nd[i].alg_mult == od[i].alg_mult;
    }
    detail += fmt("g=%.1f %zu/%zu roots; ", g, nd.size(), od.size());
  }
  return {same && worst <= 1e-9, detail + fmt("max deviation %.2e (tol 1e-9)", worst)};
}

Outcome c10() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> gs(0.2, 3.0), nus(0.0, 30.0), xs(0.5, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double g = gs(rng);
    const auto c = Contrast::from_gamma(std::abs(g - 1) < 1e-3 ? g + 0.01 : g);
    const Order nu(nus(rng));
    const double x = xs(rng);
    const double h = 1e-3 * std::min(1.0, x / (1 + nu.value()));
    auto f = [&](double t) { return f_nu(c, nu, t); };
    const double fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    const double gg = c.gamma();
    const auto in = bessel_j_with_prime(nu, x), out = bessel_j_with_prime(nu, gg * x);
    const double scale = (1 + gg * gg) * (std::abs(in.value) + std::abs(in.derivative)) *
                         (std::abs(out.value) + std::abs(out.derivative));
    if (scale < 1e-280) continue;
    worst = std::max(worst, std::abs(fd + f(x) / x - (1 - gg * gg) * in.value * out.value) / scale);
  }
  return {worst <= 1e-9, fmt("max scaled residual %.3e over 1000 samples (tol 1e-9)", worst)};
}

Outcome c11() {
  const Order nu(5.5);
  const double j1 = boost::math::cyl_bessel_j_zero(5.5, 1), j3 = boost::math::cyl_bessel_j_zero(5.5, 3);
  const double g = j1 / j3;
  const auto c = Contrast::from_gamma(g);
  const auto roots = enumerate_ites_for_nu(c, nu, 30.0).roots;
  const auto it = std::find_if(roots.begin(), roots.end(),
                               [](const RealIte& r) { return r.kind == RootKind::CommonZero; });
  if (it == roots.end()) return {false, "no common-zero root found"};
  const auto d = f_nu_derivatives(c, nu, it->lambda);
  const auto in = bessel_j_with_prime(nu, it->lambda), out = bessel_j_with_prime(nu, g * it->lambda);
  const double scale = (1 + g * g) * std::abs(in.derivative * out.derivative);
  const double low = (std::abs(d.f) + std::abs(d.d1) + std::abs(d.d2)) / scale;
  const double third = std::abs(d.d3) / scale;
  bool neighbours_simple = true;
  const auto pos = it - roots.begin();
  if (pos > 0) neighbours_simple = neighbours_simple && (it - 1)->alg_mult == 1;
  if (it + 1 != roots.end()) neighbours_simple = neighbours_simple && (it + 1)->alg_mult == 1;
  const bool ok = std::abs(it->lambda - j3) <= 1e-9 * j3 && std::abs(it->lambda - 16.35) < 5e-3 &&
                  it->alg_mult == 3 && low < 1e-6 && third > 0.1 && neighbours_simple;
  return {ok, fmt("root %.10f (j3 %.10f) mult %d, |F|+|F'|+|F''| %.1e, |F'''| %.3f (scaled), neighbours %s",
                  it->lambda, j3, it->alg_mult, low, third, neighbours_simple ? "simple" : "not simple")};
}

// Shared n = 2 data for criteria 12 and 14.
struct TwoDim {
  double m;
  NdSpectrum spectrum;
};

std::vector<TwoDim>& two_dim() {
  static std::vector<TwoDim> data = [] {
    std::vector<TwoDim> v;
    NdOptions opts;
    opts.threads = g_threads;
    for (double m : {0.25, 4.0}) v.push_back({m, enumerate_nd(DimensionConfig(2, m), 300.0, opts)});
    return v;
  }();
  return data;
}

Outcome c12() {
  bool ok = true;
  std::string detail;
  const auto grid = range(150, 300, 10);
  for (const auto& d : two_dim()) {
    std::vector<std::int64_t> counts;
    for (double r : grid) counts.push_back(d.spectrum.count(r));
    const double fit = fit_power_law(grid, counts, 2);
    const double want = weyl_coefficient(DimensionConfig(2, d.m)).value;
    const double rel = std::abs(fit - want) / want;
    ok = ok && rel <= 0.10;
    detail += fmt("m=%g c=%.5f vs %.5f rel %.4f; ", d.m, fit, want, rel);
  }
  return {ok, detail + "(tol 0.10)"};
}

Outcome c13() {
  NdOptions opts;
  opts.threads = g_threads;
  const DimensionConfig cfg(3, 4.0);
  const auto spec = enumerate_nd(cfg, 150.0, opts);
  const auto grid = range(75, 150, 5);
  std::vector<std::int64_t> counts;
  for (double r : grid) counts.push_back(spec.count(r));
  const double fit = fit_power_law(grid, counts, 3);
  const double want = weyl_coefficient(cfg).value;
  const double rel = std::abs(fit - want) / want;
  return {rel <= 0.12, fmt("c=%.5f vs %.5f rel %.4f (tol 0.12)", fit, want, rel)};
}

Outcome c14() {
  bool ok = true;
  std::string detail;
  const auto grid = range(30, 300, 15);
  for (const auto& d : two_dim()) {
    const DimensionConfig cfg(2, d.m);
    const auto rep = weyl_report(d.spectrum, cfg, grid);
    std::vector<double> scaled;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      scaled.push_back(std::abs(static_cast<double>(rep.counts[i] - rep.dirichlet_diff[i])) / grid[i]);
    }
    const bool flat = no_growth(scaled, 0.5);
    ok = ok && flat;
    detail += fmt("m=%g max %.3f, first-quarter %.3f, last-quarter %.3f%s; ", d.m,
                  *std::max_element(scaled.begin(), scaled.end()),
                  *std::max_element(scaled.begin(), scaled.begin() + static_cast<long>(scaled.size() / 4)),
                  *std::max_element(scaled.end() - static_cast<long>(scaled.size() / 4), scaled.end()),
                  flat ? "" : " (growth)");
  }
  return {ok, detail + "(slack 0.5)"};
}

Outcome c15() {
  bool ok = true;
  std::string detail;
  for (auto [n, m] : {std::pair{3, 4.0}, std::pair{2, 0.25}}) {
    CoincidenceOptions opts;
    opts.nd.threads = g_threads;
    const auto rep = verify_ite_te_coincidence(DimensionConfig(n, m), 60.0, opts);
    ok = ok && rep.ok();
    detail += fmt("(n=%d m=%g) %zu ITEs, %zu mismatches; ", n, m, rep.ites.size(), rep.mismatches.size());
  }
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> xs(0.05, 100.0);
  const DimensionConfig cfg(3, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int l = static_cast<int>(rng() % 31);
    worst = std::max(worst, std::abs(std::abs(s_matrix_entry(cfg, l, xs(rng))) - 1.0));
  }
  ok = ok && worst <= 1e-10;
  return {ok, detail + fmt("max ||S|-1| %.2e (tol 1e-10)", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--threads") g_threads = std::max(1, std::atoi(argv[i + 1]));
  }
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"closed form gamma=2", c1},
      {"closed form gamma=3", c2},
      {"1D derivative formulas", c3},
      {"1D geometric Weyl law", c4},
      {"1D algebraic law, gamma=3/8", c5},
      {"1D oracle equivalence", c6},
      {"complex zero density, gamma=sqrt2", c7},
      {"strip confinement", c8},
      {"n=3, l=0 reduces to 1D", c9},
      {"n-D derivative identity", c10},
      {"triple root, nu=11/2", c11},
      {"Weyl fit n=2", c12},
      {"Weyl fit n=3", c13},
      {"first-equality residual n=2", c14},
      {"scattering coincidence and unitarity", c15},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] criterion %zu: %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
