#include "itespec/ite_1d_complex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "itespec/errors.hpp"
#include "itespec/ite_1d.hpp"

namespace itespec {
namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

// Newton step length |F/F'|; a cheap proxy for the distance to the nearest zero.
double newton_distance(const Contrast& c, cplx z) {
  const cplx fp = f_1d_prime(c, z);
  const cplx f = f_1d(c, z);
  if (fp == cplx(0.0)) return std::abs(f) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(f / fp);
}

// Composite trapezoid for F'/F along a straight edge, refinable by doubling.
class EdgeQuadrature {
 public:
  EdgeQuadrature(const Contrast& c, cplx from, cplx to, int panels)
      : c_(&c), from_(from), to_(to), panels_(panels) {
    sum_ = 0.5 * (integrand(from) + integrand(to));
    for (int i = 1; i < panels_; ++i) sum_ += integrand(point(i, panels_));
  }

  void refine() {
    const int fine = 2 * panels_;
    for (int i = 1; i < fine; i += 2) sum_ += integrand(point(i, fine));
    panels_ = fine;
  }

  cplx integral() const { return sum_ * (to_ - from_) / static_cast<double>(panels_); }
  double min_newton_distance() const { return min_dist_; }
  int panels() const { return panels_; }

 private:
  cplx point(int i, int n) const {
    return from_ + (to_ - from_) * (static_cast<double>(i) / n);
  }
  cplx integrand(cplx z) {
    const cplx f = f_1d(*c_, z);
    const cplx fp = f_1d_prime(*c_, z);
    const double dist = f == cplx(0.0) ? 0.0 : std::abs(f / fp);
    min_dist_ = std::min(min_dist_, dist / (1.0 + std::abs(z)));
    if (f == cplx(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return fp / f;
  }

  const Contrast* c_;
  cplx from_, to_;
  int panels_;
  cplx sum_{0.0, 0.0};
  double min_dist_ = std::numeric_limits<double>::infinity();
};

bool near_integer(cplx v, double band, long& k) {
  k = std::lround(v.real());
  return std::isfinite(v.real()) && std::isfinite(v.imag()) &&
         std::abs(v.real() - static_cast<double>(k)) < band && std::abs(v.imag()) < band;
}

// Moves every edge whose samples came within the guard distance of a zero.
// Shifts always go in the positive direction so a shared edge moves
// identically for both cells of a partition.
bool shift_grazed_edges(const std::array<EdgeQuadrature, 4>& edges, Rectangle& r,
                        double guard, double shift) {
  bool moved = false;
  for (int e = 0; e < 4; ++e) {
    if (edges[e].min_newton_distance() >= guard) continue;
    moved = true;
    switch (e) {
      case 0: r.im_lo += shift; break;
      case 1: r.re_hi += shift; break;
      case 2: r.im_hi += shift; break;
      default: r.re_lo += shift; break;
    }
  }
  return moved;
}

// Quadrature that fails to settle next to a zero gets the edge moved further.
constexpr double kSlowEdgeGuard = 1e-4;

std::array<EdgeQuadrature, 4> make_edges(const Contrast& c, const Rectangle& r,
                                         double density) {
  const cplx a(r.re_lo, r.im_lo), b(r.re_hi, r.im_lo), d(r.re_hi, r.im_hi),
      e(r.re_lo, r.im_hi);
  auto panels = [density](double len) {
    return std::max(8, static_cast<int>(std::ceil(len * density)));
  };
  return {EdgeQuadrature(c, a, b, panels(r.width())),
          EdgeQuadrature(c, b, d, panels(r.height())),
          EdgeQuadrature(c, d, e, panels(r.width())),
          EdgeQuadrature(c, e, a, panels(r.height()))};
}

// Candidate split positions, nearest the middle first.
constexpr std::array<double, 11> kSplitFractions = {0.5,  0.45, 0.55, 0.4,  0.6, 0.35,
                                                    0.65, 0.3,  0.7,  0.25, 0.75};

// Score of a segment: smallest Newton distance along it relative to its length.
double segment_clearance(const Contrast& c, cplx from, cplx to) {
  constexpr int kSamples = 33;
  const double len = std::abs(to - from);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const cplx z = from + (to - from) * (static_cast<double>(i) / (kSamples - 1));
    worst = std::min(worst, newton_distance(c, z));
  }
  return worst / len;
}

// Picks a vertical line Re = x in [lo, hi] away from zeros.
double choose_vertical_cut(const Contrast& c, double lo, double hi, double im_lo,
                           double im_hi) {
  double best = 0.5 * (lo + hi), best_score = -1.0;
  for (double f : kSplitFractions) {
    const double x = lo + f * (hi - lo);
    const double score = segment_clearance(c, {x, im_lo}, {x, im_hi});
    if (score >= 0.04) return x;
    if (score > best_score) {
      best_score = score;
      best = x;
    }
  }
  return best;
}

double choose_horizontal_cut(const Contrast& c, double lo, double hi, double re_lo,
                             double re_hi) {
  double best = 0.5 * (lo + hi), best_score = -1.0;
  for (double f : kSplitFractions) {
    const double y = lo + f * (hi - lo);
    const double score = segment_clearance(c, {re_lo, y}, {re_hi, y});
    if (score >= 0.04) return y;
    if (score > best_score) {
      best_score = score;
      best = y;
    }
  }
  return best;
}

std::pair<Rectangle, Rectangle> split_cell(const Contrast& c, const Rectangle& r) {
  if (r.width() >= r.height()) {
    const double x = choose_vertical_cut(c, r.re_lo, r.re_hi, r.im_lo, r.im_hi);
    return {Rectangle(r.re_lo, x, r.im_lo, r.im_hi), Rectangle(x, r.re_hi, r.im_lo, r.im_hi)};
  }
  const double y = choose_horizontal_cut(c, r.im_lo, r.im_hi, r.re_lo, r.re_hi);
  return {Rectangle(r.re_lo, r.re_hi, r.im_lo, y), Rectangle(r.re_lo, r.re_hi, y, r.im_hi)};
}

// Newton iteration z <- z - m F/F' (m = assumed multiplicity).
std::optional<cplx> polish(const Contrast& c, cplx z, int mult) {
  std::optional<cplx> out;
  for (int it = 0; it < 100; ++it) {
    const cplx f = f_1d(c, z);
    if (f == cplx(0.0)) {
      out = z;
      break;
    }
    const cplx fp = f_1d_prime(c, z);
    if (fp == cplx(0.0)) return std::nullopt;
    const cplx dz = static_cast<double>(mult) * f / fp;
    if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag())) return std::nullopt;
    z -= dz;
    if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) {
      out = z;
      break;
    }
  }
  if (!out) return std::nullopt;
  if (mult != 3) return out;

  // F/F' only pins a triple zero to about cbrt(eps); F'' has a simple zero
  // there and finishes the job.
  const double g = c.gamma(), k = 1.0 - g * g;
  z = *out;
  for (int it = 0; it < 20; ++it) {
    const cplx s = std::sin(z), co = std::cos(z), sg = std::sin(g * z), cg = std::cos(g * z);
    const cplx f2 = k * (co * sg + g * s * cg);
    const cplx f3 = k * (2.0 * g * co * cg - (1.0 + g * g) * s * sg);
    if (f3 == cplx(0.0)) break;
    const cplx dz = f2 / f3;
    if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag()) ||
        std::abs(dz) > 1e-4 * (1.0 + std::abs(z))) {
      break;
    }
    z -= dz;
    if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

struct Cell {
  Rectangle rect;
  int winding;
};

struct SearchState {
  const Contrast* c;
  WindingOptions opts;
  std::vector<ComplexIte> found;
  int unresolved = 0;
};

void isolate(SearchState& st, Cell root) {
  const Contrast& c = *st.c;
  std::vector<Cell> stack{root};
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    if (cell.winding <= 0) continue;
    const Rectangle& r = cell.rect;
    const double slack = 1e-12 * (1.0 + std::abs(r.center()));

    if (cell.winding == 1) {
      if (auto z = polish(c, r.center(), 1); z && r.contains(*z, slack)) {
        st.found.push_back({*z, 1});
        continue;
      }
    } else if (cell.winding == 3) {
      if (auto z = polish(c, r.center(), 3);
          z && r.contains(*z, slack) &&
          std::abs(std::sin(*z)) + std::abs(std::sin(c.gamma() * *z)) < 1e-8) {
        st.found.push_back({*z, 3});
        continue;
      }
    }

    if (std::max(r.width(), r.height()) < 1e-10 * (1.0 + std::abs(r.center()))) {
      st.found.push_back({r.center(), cell.winding});
      ++st.unresolved;
      continue;
    }

    auto [left, right] = split_cell(c, r);
    const auto wl = winding_count_detailed(c, left, st.opts);
    const auto wr = winding_count_detailed(c, right, st.opts);
    if (wl.count + wr.count != cell.winding) {
      std::ostringstream msg;
      msg << "winding not additive on split of [" << r.re_lo << ", " << r.re_hi << "]x["
          << r.im_lo << ", " << r.im_hi << "]: " << cell.winding << " != " << wl.count
          << " + " << wr.count;
      throw NumericalError(msg.str());
    }
    stack.push_back({wr.used, wr.count});
    stack.push_back({wl.used, wl.count});
  }
}

bool same_zero(cplx a, cplx b) { return std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)); }

}  // namespace

Rectangle::Rectangle(double re_lo_, double re_hi_, double im_lo_, double im_hi_)
    : re_lo(re_lo_), re_hi(re_hi_), im_lo(im_lo_), im_hi(im_hi_) {
  if (!(re_lo < re_hi) || !(im_lo < im_hi)) {
    throw DomainError("rectangle needs re_lo < re_hi and im_lo < im_hi");
  }
}

bool Rectangle::contains(std::complex<double> z, double slack) const noexcept {
  return z.real() >= re_lo - slack && z.real() <= re_hi + slack &&
         z.imag() >= im_lo - slack && z.imag() <= im_hi + slack;
}

double strip_bound(const Contrast& c) {
  const double g = c.gamma();
  const double lead = std::abs(g - 1.0);
  const double rest = 3.0 + 3.0 * g + lead;
  // |g-1| e^{(g+1)y} > rest e^{|g-1|y}  <=>  y > ln(rest/lead) / (g+1-|g-1|)
  return std::log(rest / lead) / (g + 1.0 - lead);
}

WindingResult winding_count_detailed(const Contrast& c, const Rectangle& rect,
                                     const WindingOptions& opts) {
  Rectangle r = rect;
  const double base_density = 8.0 / std::min(r.width(), r.height());
  double shift = opts.edge_shift;

  for (int attempt = 0; attempt < 8; ++attempt) {
    auto edges = make_edges(c, r, base_density);

    bool moved = shift_grazed_edges(edges, r, opts.edge_guard, shift);
    if (moved) continue;

    auto total = [&edges] {
      cplx s(0.0, 0.0);
      for (const auto& e : edges) s += e.integral();
      return s / cplx(0.0, 2.0 * pi);
    };
    cplx prev = total();
    long k_prev = 0;
    bool prev_ok = near_integer(prev, opts.integer_band, k_prev);
    for (int level = 1; level <= opts.max_doublings; ++level) {
      for (auto& e : edges) e.refine();
      // finer samples can land on a zero the coarse ones straddled
      if (shift_grazed_edges(edges, r, opts.edge_guard, shift)) {
        moved = true;
        break;
      }
      const cplx cur = total();
      long k = 0;
      const bool ok = near_integer(cur, opts.integer_band, k);
      if (ok && prev_ok && k == k_prev) {
        const int density = static_cast<int>(base_density * (1 << level));
        return {static_cast<int>(k), cur, density, r};
      }
      prev = cur;
      prev_ok = ok;
      k_prev = k;
    }
    if (moved) continue;
    shift *= 10.0;
    if (shift_grazed_edges(edges, r, kSlowEdgeGuard, shift)) continue;
    std::ostringstream msg;
    msg << "winding_count did not stabilise on [" << r.re_lo << ", " << r.re_hi << "]x["
        << r.im_lo << ", " << r.im_hi << "]; last value " << prev.real() << "+"
        << prev.imag() << "i";
    throw NumericalError(msg.str());
  }
  throw NumericalError("winding_count: could not move edges off nearby zeros");
}

int winding_count(const Contrast& c, const Rectangle& rect, const WindingOptions& opts) {
  return winding_count_detailed(c, rect, opts).count;
}

ComplexEnumeration enumerate_complex_ites_detailed(const Contrast& c, double R,
                                                   const WindingOptions& opts) {
  if (!std::isfinite(R) || R <= 0.0) throw DomainError("enumerate_complex_ites: R must be > 0");
  ComplexEnumeration out;
  out.strip = strip_bound(c);
  const double C = out.strip;
  const double start = out.re_start;
  if (R <= start) return out;

  SearchState st{&c, opts, {}, 0};

  // F is odd with a triple zero at the origin.
  {
    const int w = winding_count(c, Rectangle(-start, start, -C, C), opts);
    out.near_imaginary_axis = (w - 3) / 2;
  }

  // Columns of width ~2 with zero-avoiding interior cuts.
  const int columns = std::max(1, static_cast<int>(std::ceil((R - start) / 2.0)));
  const double width = (R - start) / columns;
  std::vector<double> cuts{start};
  for (int k = 1; k < columns; ++k) {
    const double nominal = start + k * width;
    cuts.push_back(choose_vertical_cut(c, nominal - 0.25 * width, nominal + 0.25 * width,
                                       -C, C));
  }
  cuts.push_back(R);

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rectangle column(cuts[k], cuts[k + 1], -C, C);
    // The band just outside the strip must be zero-free.
    for (double sign : {1.0, -1.0}) {
      const Rectangle band(cuts[k], cuts[k + 1], sign > 0 ? C : -C - 2.0,
                           sign > 0 ? C + 2.0 : -C);
      if (winding_count(c, band, opts) != 0) {
        throw NumericalError("zero found outside the computed strip bound");
      }
    }
    const auto w = winding_count_detailed(c, column, opts);
    isolate(st, {w.used, w.count});
  }
  out.unresolved_clusters = st.unresolved;

  // Snap real zeros, then rebuild the list from the upper half-plane so the
  // output is exactly conjugate-closed.
  std::vector<ComplexIte> real, upper, lower;
  for (auto zi : st.found) {
    if (std::abs(zi.z.imag()) <= 1e-10 * (1.0 + std::abs(zi.z))) {
      zi.z = {zi.z.real(), 0.0};
      real.push_back(zi);
    } else if (zi.z.imag() > 0.0) {
      upper.push_back(zi);
    } else {
      lower.push_back(zi);
    }
  }
  auto dedupe = [](std::vector<ComplexIte>& v) {
    std::sort(v.begin(), v.end(), [](const ComplexIte& a, const ComplexIte& b) {
      return a.z.real() < b.z.real() ||
             (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
    });
    std::vector<ComplexIte> kept;
    for (const auto& z : v) {
      if (!kept.empty() && same_zero(kept.back().z, z.z)) continue;
      kept.push_back(z);
    }
    v = std::move(kept);
  };
  dedupe(real);
  dedupe(upper);
  dedupe(lower);
  if (upper.size() != lower.size()) {
    throw NumericalError("complex zeros are not conjugate-symmetric");
  }
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (!same_zero(upper[i].z, std::conj(lower[i].z)) || upper[i].mult != lower[i].mult) {
      throw NumericalError("complex zeros are not conjugate-symmetric");
    }
  }

  // Real zeros must agree with the bracketing enumeration on the real line.
  auto reference = enumerate_real_ites_1d(c, R);
  std::erase_if(reference, [start](const RealIte& x) { return x.lambda <= start; });
  bool agree = reference.size() == real.size();
  for (std::size_t i = 0; agree && i < real.size(); ++i) {
    agree = std::abs(reference[i].lambda - real[i].z.real()) <= 1e-9 * (1.0 + reference[i].lambda) &&
            reference[i].alg_mult == real[i].mult;
  }
  if (!agree) {
    throw NumericalError("real zeros from contour search disagree with real-line enumeration");
  }

  for (const auto& z : real) out.zeros.push_back({{z.z.real(), 0.0}, z.mult});
  for (const auto& z : upper) {
    out.zeros.push_back(z);
    out.zeros.push_back({std::conj(z.z), z.mult});
  }
  std::sort(out.zeros.begin(), out.zeros.end(), [](const ComplexIte& a, const ComplexIte& b) {
    return a.z.real() < b.z.real() || (a.z.real() == b.z.real() && a.z.imag() < b.z.imag());
  });
  return out;
}

std::vector<ComplexIte> enumerate_complex_ites(const Contrast& c, double R) {
  return enumerate_complex_ites_detailed(c, R).zeros;
}

std::int64_t total_multiplicity(std::span<const ComplexIte> zeros, double R) {
  std::int64_t n = 0;
  for (const auto& z : zeros) {
    if (z.z.real() > 0.0 && z.z.real() <= R) n += z.mult;
  }
  return n;
}

CountReport titchmarsh_residual(const Contrast& c, std::span<const double> grid,
                                std::span<const ComplexIte> zeros) {
  check_radius_grid(grid);
  std::vector<double> radii(grid.begin(), grid.end());
  std::vector<std::int64_t> counts;
  for (double R : radii) counts.push_back(total_multiplicity(zeros, R));
  return make_count_report(1, (1.0 + c.gamma()) / pi, std::move(radii), std::move(counts));
}

CountReport titchmarsh_residual(const Contrast& c, std::span<const double> grid) {
  check_radius_grid(grid);
  const auto zeros = enumerate_complex_ites(c, grid.back());
  return titchmarsh_residual(c, grid, zeros);
}

}  // namespace itespec
