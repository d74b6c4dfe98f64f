#pragma once

// Solvers for parameter sets on the ellipticity manifolds of 6x6 reciprocal
// matrices: the three-ellipse variety (tel2 = tel3 = tel1 = 0) and the slice
// A1 = A5 = u A3, A2 = A4 = v A3 of the single-ellipse criterion.

#include "kipp/classify.hpp"
#include "kipp/error.hpp"
#include "kipp/mpoly.hpp"
#include "kipp/nrpoly.hpp"
#include "kipp/scalar.hpp"
#include "kipp/tel.hpp"
#include "kipp/trimat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kipp {

/// Exact values of (tel2, tel3, tel1, tel4) at the given parameters, rounded
/// once at the end.
inline std::array<double, 4> residuals_m6(std::span<const double> a) {
  if (a.size() != 5) throw Error(ErrorCode::wrong_size, "residuals_m6 needs five parameters");
  std::vector<Rational> q;
  for (double v : a) q.push_back(to_rational(v));
  const auto r = tel_residuals<Rational>(q);
  return {to_double(r[0]), to_double(r[1]), to_double(r[2]), to_double(r[3])};
}

/// Residuals divided by (sum A)^degree.
inline std::array<double, 4> scale_residuals(std::span<const double> a, const std::array<double, 4>& r) {
  const double s = std::accumulate(a.begin(), a.end(), 0.0);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = r[i] / std::pow(s, kTelDegrees[i]);
  return out;
}

struct M6Solution {
  std::array<double, 5> A{};
  std::array<double, 4> residuals{};  // tel2, tel3, tel1, tel4
  std::string branch;                 // the fixed pair, e.g. "A1=20,A5=40"
  bool realizable = false;            // every A_j >= 1

  std::array<double, 4> scaled_residuals() const { return scale_residuals(A, residuals); }
};

/// A fixed parameter: index 1..5 as in A_1..A_5.
struct FixedParam {
  std::size_t index = 0;
  double value = 0.0;
};

struct M6Options {
  double a3_lo = 0.0;  // 0: max(fixed) / 10
  double a3_hi = 0.0;  // 0: 10 max(fixed)
  std::size_t grid = 200;
  double dedup = 1e-8;
  double newton_tol = 1e-12;
  int newton_iters = 50;
};

struct M6Report {
  std::vector<M6Solution> solutions;
  std::size_t newton_failures = 0;  // A3 grid points where no start converged
  std::vector<std::string> warnings;
};

namespace detail {

/// Flat polynomial in up to five variables for fast double evaluation.
class FlatPoly {
 public:
  FlatPoly() = default;
  explicit FlatPoly(const RationalMPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Term t;
      t.c = to_double(c);
      for (std::size_t i = 0; i < e.size(); ++i) t.e[i] = e[i];
      terms_.push_back(t);
    }
  }

  double operator()(const std::array<double, 5>& a) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
      double v = t.c;
      for (std::size_t i = 0; i < 5; ++i)
        for (int k = 0; k < t.e[i]; ++k) v *= a[i];
      acc += v;
    }
    return acc;
  }

 private:
  struct Term {
    double c = 0.0;
    std::array<int, 5> e{};
  };
  std::vector<Term> terms_;
};

/// tel2, tel3, tel1 and their gradients.
struct TelSystem {
  std::array<FlatPoly, 3> f;
  std::array<std::array<FlatPoly, 5>, 3> grad;

  static const TelSystem& get() {
    static const TelSystem sys = [] {
      std::vector<RationalMPoly> a;
      for (std::size_t i = 0; i < 5; ++i) a.push_back(RationalMPoly::variable(i));
      const auto r = tel_residuals<RationalMPoly>(a);
      TelSystem s;
      for (std::size_t k = 0; k < 3; ++k) {
        s.f[k] = FlatPoly(r[k]);
        for (std::size_t i = 0; i < 5; ++i) s.grad[k][i] = FlatPoly(r[k].derivative(i));
      }
      return s;
    }();
    return sys;
  }
};

inline double sum5(const std::array<double, 5>& a) { return a[0] + a[1] + a[2] + a[3] + a[4]; }

// Newton on (tel2, tel3) in the two free coordinates, A3 held fixed.
inline std::optional<std::array<double, 5>> newton2(std::array<double, 5> a, std::size_t i0, std::size_t i1,
                                                    const M6Options& opt) {
  const auto& sys = TelSystem::get();
  for (int it = 0; it < opt.newton_iters; ++it) {
    const double s = sum5(a);
    const double f0 = sys.f[0](a), f1 = sys.f[1](a);
    if (std::abs(f0) <= opt.newton_tol * s * s && std::abs(f1) <= opt.newton_tol * s * s) return a;
    const double j00 = sys.grad[0][i0](a), j01 = sys.grad[0][i1](a);
    const double j10 = sys.grad[1][i0](a), j11 = sys.grad[1][i1](a);
    const double det = j00 * j11 - j01 * j10;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return std::nullopt;
    const double d0 = (f0 * j11 - f1 * j01) / det;
    const double d1 = (j00 * f1 - j10 * f0) / det;
    // damp so that the free coordinates stay positive
    double step = 1.0;
    while (step > 1e-4 && (a[i0] - step * d0 <= 0.0 || a[i1] - step * d1 <= 0.0)) step *= 0.5;
    a[i0] -= step * d0;
    a[i1] -= step * d1;
    if (!std::isfinite(a[i0]) || !std::isfinite(a[i1]) || a[i0] <= 0.0 || a[i1] <= 0.0) return std::nullopt;
  }
  const double s = sum5(a);
  if (std::abs(sys.f[0](a)) <= opt.newton_tol * s * s && std::abs(sys.f[1](a)) <= opt.newton_tol * s * s) return a;
  return std::nullopt;
}

// Newton on all three equations in (free0, free1, A3).
inline std::optional<std::array<double, 5>> newton3(std::array<double, 5> a, std::size_t i0, std::size_t i1,
                                                    const M6Options& opt) {
  const auto& sys = TelSystem::get();
  const std::array<std::size_t, 3> idx{i0, i1, 2};
  auto converged = [&](const std::array<double, 5>& p) {
    const double s = sum5(p);
    return std::abs(sys.f[0](p)) <= opt.newton_tol * s * s && std::abs(sys.f[1](p)) <= opt.newton_tol * s * s &&
           std::abs(sys.f[2](p)) <= opt.newton_tol * s * s * s;
  };
  int extra = 2;  // a couple of steps past the threshold
  for (int it = 0; it < opt.newton_iters; ++it) {
    if (converged(a) && extra-- == 0) return a;
    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) m[r][c] = sys.grad[r][idx[c]](a);
      m[r][3] = sys.f[r](a);
    }
    for (std::size_t c = 0; c < 3; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < 3; ++r)
        if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
      if (!(std::abs(m[piv][c]) > 0.0)) return std::nullopt;
      std::swap(m[c], m[piv]);
      for (std::size_t r = c + 1; r < 3; ++r) {
        const double f = m[r][c] / m[c][c];
        for (std::size_t k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
      }
    }
    std::array<double, 3> d{};
    for (std::size_t c = 3; c-- > 0;) {
      double v = m[c][3];
      for (std::size_t k = c + 1; k < 3; ++k) v -= m[c][k] * d[k];
      d[c] = v / m[c][c];
    }
    const auto before = a;
    for (std::size_t c = 0; c < 3; ++c) a[idx[c]] -= d[c];
    for (std::size_t c = 0; c < 3; ++c)
      if (!std::isfinite(a[idx[c]]) || a[idx[c]] <= 0.0) return converged(before) ? std::optional(before) : std::nullopt;
  }
  if (converged(a)) return a;
  return std::nullopt;
}

inline double max_rel_diff(const std::array<double, 5>& a, const std::array<double, 5>& b) {
  const double s = std::max(sum5(a), sum5(b));
  double d = 0.0;
  for (std::size_t i = 0; i < 5; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d / s;
}

inline void push_unique(std::vector<std::array<double, 5>>& out, const std::array<double, 5>& p, double tol) {
  for (const auto& q : out)
    if (max_rel_diff(p, q) <= tol) return;
  out.push_back(p);
}

inline std::string param_name(std::size_t index) { return "A" + std::to_string(index); }

}  // namespace detail

/// Fix two of {A1, A2, A4, A5}, sweep A3 over a geometric grid, solve
/// (tel2, tel3) for the other two by Newton with continuation, bracket sign
/// changes of tel1 along each branch and polish the roots.
inline M6Report solve_m6(const std::array<FixedParam, 2>& fixed, const M6Options& opt = {}) {
  for (const auto& f : fixed) {
    if (f.index != 1 && f.index != 2 && f.index != 4 && f.index != 5)
      throw Error(ErrorCode::invalid_param, "fixed parameters must be two of A1, A2, A4, A5");
    if (!(f.value > 0.0) || !std::isfinite(f.value))
      throw Error(ErrorCode::invalid_param, "fixed values must be positive");
  }
  if (fixed[0].index == fixed[1].index) throw Error(ErrorCode::invalid_param, "the two fixed parameters coincide");
  if (opt.grid < 2) throw Error(ErrorCode::invalid_param, "A3 grid needs at least two points");

  M6Report report;
  const auto pair = [&](std::size_t i, std::size_t j) {
    return (fixed[0].index == i && fixed[1].index == j) || (fixed[0].index == j && fixed[1].index == i);
  };
  if ((pair(1, 5) || pair(2, 4)) && fixed[0].value == fixed[1].value)
    report.warnings.push_back("fixed values force " + detail::param_name(fixed[0].index) + " = " +
                              detail::param_name(fixed[1].index) +
                              "; only the all-equal ray solves the system in that case");

  std::array<double, 5> base{};
  std::vector<std::size_t> free_idx;
  for (std::size_t i : {0u, 1u, 3u, 4u}) {
    bool is_fixed = false;
    for (const auto& f : fixed)
      if (f.index == i + 1) {
        base[i] = f.value;
        is_fixed = true;
      }
    if (!is_fixed) free_idx.push_back(i);
  }
  const std::size_t i0 = free_idx[0], i1 = free_idx[1];
  const double top = std::max(fixed[0].value, fixed[1].value);
  const double lo = opt.a3_lo > 0.0 ? opt.a3_lo : top / 10.0;
  const double hi = opt.a3_hi > 0.0 ? opt.a3_hi : top * 10.0;
  if (!(hi > lo)) throw Error(ErrorCode::invalid_param, "empty A3 bracket");

  std::string tag = detail::param_name(fixed[0].index) + "=" + std::to_string(fixed[0].value) + "," +
                    detail::param_name(fixed[1].index) + "=" + std::to_string(fixed[1].value);

  const auto& sys = detail::TelSystem::get();
  auto tel1_scaled = [&](const std::array<double, 5>& a) {
    const double s = detail::sum5(a);
    return sys.f[2](a) / (s * s * s);
  };

  std::vector<double> a3(opt.grid);
  for (std::size_t i = 0; i < opt.grid; ++i)
    a3[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(opt.grid - 1));

  constexpr std::size_t kSeeds = 6;
  auto solve_at = [&](double t, const std::vector<std::array<double, 5>>& warm) {
    std::vector<std::array<double, 5>> out;
    for (const auto& w : warm) {
      auto p = w;
      p[2] = t;
      if (auto r = detail::newton2(p, i0, i1, opt)) detail::push_unique(out, *r, opt.dedup);
    }
    for (std::size_t s0 = 0; s0 < kSeeds; ++s0)
      for (std::size_t s1 = 0; s1 < kSeeds; ++s1) {
        auto p = base;
        p[2] = t;
        p[i0] = lo * std::pow(hi / lo, (s0 + 0.5) / kSeeds);
        p[i1] = lo * std::pow(hi / lo, (s1 + 0.5) / kSeeds);
        if (auto r = detail::newton2(p, i0, i1, opt)) detail::push_unique(out, *r, opt.dedup);
      }
    return out;
  };

  std::vector<std::array<double, 5>> roots;
  auto add_root = [&](const std::array<double, 5>& guess) {
    if (auto r = detail::newton3(guess, i0, i1, opt)) detail::push_unique(roots, *r, opt.dedup);
  };

  std::vector<std::array<double, 5>> prev = solve_at(a3[0], {});
  if (prev.empty()) ++report.newton_failures;
  for (const auto& p : prev)
    if (std::abs(tel1_scaled(p)) <= opt.newton_tol) add_root(p);
  for (std::size_t i = 1; i < opt.grid; ++i) {
    std::vector<std::array<double, 5>> cur = solve_at(a3[i], prev);
    if (cur.empty()) ++report.newton_failures;
    for (const auto& p : prev) {
      auto q0 = p;
      q0[2] = a3[i];
      const auto q = detail::newton2(q0, i0, i1, opt);
      if (!q) continue;
      const double fp = tel1_scaled(p), fq = tel1_scaled(*q);
      if (std::abs(fq) <= opt.newton_tol) add_root(*q);
      if (!((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0))) continue;
      // bisection in A3 along the branch
      double tl = a3[i - 1], th = a3[i];
      auto pl = p;
      double fl = fp;
      bool lost = false;
      for (int it = 0; it < 100 && th - tl > 1e-15 * th; ++it) {
        const double tm = 0.5 * (tl + th);
        auto g = pl;
        g[2] = tm;
        const auto pm = detail::newton2(g, i0, i1, opt);
        if (!pm) {
          lost = true;
          break;
        }
        const double fm = tel1_scaled(*pm);
        if ((fm < 0.0) == (fl < 0.0)) {
          tl = tm;
          pl = *pm;
          fl = fm;
        } else {
          th = tm;
        }
      }
      if (!lost) add_root(pl);
    }
    prev = std::move(cur);
  }

  // With equal fixed values forcing A1 = A5 or A2 = A4 the only solutions are
  // on the all-equal ray, where the system has a multiple root; snap to it.
  if (!report.warnings.empty()) {
    std::array<double, 5> ray;
    ray.fill(fixed[0].value);
    std::vector<std::array<double, 5>> snapped;
    for (const auto& r : roots) detail::push_unique(snapped, detail::max_rel_diff(r, ray) <= 1e-3 ? ray : r, opt.dedup);
    roots = std::move(snapped);
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& r : roots) {
    M6Solution s;
    s.A = r;
    s.residuals = residuals_m6(r);
    s.branch = tag;
    s.realizable = std::all_of(r.begin(), r.end(), [](double v) { return v >= 1.0 - kReciprocityTol; });
    report.solutions.push_back(s);
  }
  if (report.solutions.empty())
    throw Error(ErrorCode::no_bracket, "tel1 has no sign change along any branch for A3 in [" + std::to_string(lo) +
                                           ", " + std::to_string(hi) + "]");
  return report;
}

/// Reciprocal 6x6 matrix with the given parameters.
inline TridiagonalMatrix realize(const M6Solution& sol) {
  for (double v : sol.A)
    if (!(v >= 1.0 - kReciprocityTol))
      throw Error(ErrorCode::not_realizable, "every A_j must be at least 1 for a reciprocal matrix");
  return params_to_matrix(ReciprocalParams(std::vector<double>(sol.A.begin(), sol.A.end())));
}

// ---------------------------------------------------------------------------
// The (u, v) slice: A = (u, v, 1, v, u) up to scale.

/// a u + b v + c = 0 with (a, b) a unit vector.
struct UVLine {
  double a = 0.0, b = 0.0, c = 0.0;

  double distance(double u, double v) const { return std::abs(a * u + b * v + c); }
  /// u on the line for a given v (requires a != 0).
  double u_at(double v) const { return -(b * v + c) / a; }
};

struct UVPoint {
  double u = 0.0, v = 0.0;
  bool realizable = false;  // u, v > 0: some scaling A3 makes every A_j >= 1
};

struct UVSolutionSet {
  double x = 0.0;
  std::vector<UVLine> lines;  // whole lines of common zeros
  std::vector<UVPoint> points;

  double distance(double u, double v) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& l : lines) d = std::min(d, l.distance(u, v));
    for (const auto& p : points) d = std::min(d, std::hypot(p.u - u, p.v - v));
    return d;
  }
  bool contains(double u, double v, double tol) const { return distance(u, v) <= tol; }
};

namespace detail {

using DMPoly = MPoly<double>;

struct UVResultants {
  DMPoly r1, r2;  // in u (variable 0) and v (variable 1)
};

inline UVResultants uv_resultants(double x) {
  const auto u = RationalMPoly::variable(0), v = RationalMPoly::variable(1);
  const std::vector<RationalMPoly> a{u, v, RationalMPoly(1), v, u};
  const auto t = r_table<RationalMPoly>(a);
  UVResultants out;
  for (std::size_t k = 0; k < 3; ++k) {
    const double xp = std::pow(x, 2 - static_cast<int>(k));
    out.r1 = out.r1 + t.r1[k].cast<double>() * DMPoly(xp);
    out.r2 = out.r2 + t.r2[k].cast<double>() * DMPoly(xp);
  }
  return out;
}

inline double coef(const DMPoly& p, std::uint16_t eu, std::uint16_t ev) {
  DMPoly::Exponents e{eu, ev};
  while (!e.empty() && e.back() == 0) e.pop_back();
  auto it = p.terms().find(e);
  return it == p.terms().end() ? 0.0 : it->second;
}

inline double max_coef(const DMPoly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

inline UVLine normalized_line(double a, double b, double c) {
  const double n = std::hypot(a, b);
  return {a / n, b / n, c / n};
}

/// Splits a conic into two real lines when it is degenerate.
inline std::optional<std::array<UVLine, 2>> split_conic(const DMPoly& p, double rel_tol) {
  double A = coef(p, 2, 0), B = coef(p, 1, 1), C = coef(p, 0, 2);
  double D = coef(p, 1, 0), E = coef(p, 0, 1), F = coef(p, 0, 0);
  const double scale = max_coef(p);
  if (!(scale > 0.0)) return std::nullopt;
  const double det = A * (C * F - E * E / 4) - B / 2 * (B / 2 * F - E * D / 4) + D / 2 * (B / 2 * E / 2 - C * D / 2);
  if (std::abs(det) > rel_tol * scale * scale * scale) return std::nullopt;
  bool swapped = false;
  if (std::abs(A) < std::abs(C)) {
    std::swap(A, C);
    std::swap(D, E);
    swapped = true;
  }
  auto make = [&](double cu, double cv, double c0) {
    return swapped ? normalized_line(cv, cu, c0) : normalized_line(cu, cv, c0);
  };
  if (std::abs(A) <= rel_tol * scale) {
    // A = C = 0: (B u + E)(B v + D) / B
    if (std::abs(B) <= rel_tol * scale) return std::nullopt;
    return std::array<UVLine, 2>{make(B, 0.0, E), make(0.0, B, D)};
  }
  // 2A u + B v + D = +-(p v + q) with (p v + q)^2 the discriminant in v
  const double pp = B * B - 4 * A * C;
  if (pp < -rel_tol * scale * scale) return std::nullopt;
  const double pr = std::sqrt(std::max(pp, 0.0));
  double qr;
  if (pr > std::sqrt(rel_tol) * scale) {
    qr = (B * D - 2 * A * E) / pr;
  } else {
    const double qq = D * D - 4 * A * F;
    if (qq < -rel_tol * scale * scale) return std::nullopt;
    qr = std::sqrt(std::max(qq, 0.0));
  }
  return std::array<UVLine, 2>{make(2 * A, B - pr, D - qr), make(2 * A, B + pr, D + qr)};
}

/// p restricted to the line, as a polynomial in arc length from the foot of
/// the perpendicular from the origin.
inline UniPoly<double> restrict_to_line(const DMPoly& p, const UVLine& l) {
  const double u0 = -l.a * l.c, v0 = -l.b * l.c;
  const DMPoly t = DMPoly::variable(0);
  const std::vector<DMPoly> subs{DMPoly(u0) + DMPoly(-l.b) * t, DMPoly(v0) + DMPoly(l.a) * t};
  const auto q = p.compose(subs);
  std::vector<double> c(static_cast<std::size_t>(std::max(q.degree(), 0)) + 1, 0.0);
  for (const auto& [e, v] : q.terms()) c[e.empty() ? 0 : e[0]] += v;
  return UniPoly<double>(std::move(c));
}

inline std::array<double, 2> line_point(const UVLine& l, double t) {
  return {-l.a * l.c - l.b * t, -l.b * l.c + l.a * t};
}

/// Real roots of a small-degree polynomial by isolating monotone intervals.
inline std::vector<double> real_roots(const UniPoly<double>& p0, double rel_tol = 1e-13) {
  std::vector<double> c = p0.coefficients();
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= rel_tol * m) c.pop_back();
  if (c.size() <= 1) return {};
  const UniPoly<double> p(c);
  if (c.size() == 2) return {-c[0] / c[1]};
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c.back()));
  bound += 1.0;
  std::vector<double> cuts{-bound};
  for (double r : real_roots(p.derivative(), rel_tol))
    if (r > -bound && r < bound) cuts.push_back(r);
  cuts.push_back(bound);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double lo = cuts[k], hi = cuts[k + 1];
    double flo = p.eval(lo), fhi = p.eval(hi);
    if (std::abs(flo) <= rel_tol * m * (1 + std::pow(std::abs(lo), c.size() - 1))) {
      if (roots.empty() || std::abs(roots.back() - lo) > 1e-9 * (1 + std::abs(lo))) roots.push_back(lo);
      continue;
    }
    if ((flo < 0.0) == (fhi < 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((p.eval(mid) < 0.0) == (flo < 0.0)) lo = mid;
      else hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  if (std::abs(p.eval(cuts.back())) <= rel_tol * m * (1 + std::pow(bound, c.size() - 1))) roots.push_back(cuts.back());
  return roots;
}

inline bool vanishes_on(const DMPoly& p, const UVLine& l, double rel_tol) {
  const auto r = restrict_to_line(p, l);
  const double s = max_coef(p) * std::pow(1.0 + std::abs(l.c), std::max(p.degree(), 0));
  return std::all_of(r.coefficients().begin(), r.coefficients().end(),
                     [&](double v) { return std::abs(v) <= rel_tol * s; });
}

inline void push_point(std::vector<UVPoint>& out, double u, double v, double tol) {
  for (const auto& p : out)
    if (std::max(std::abs(p.u - u), std::abs(p.v - v)) <= tol) return;
  out.push_back({u, v, u > 0.0 && v > 0.0});
}

}  // namespace detail

struct UVOptions {
  double lo = -5.0, hi = 12.0;  // search box for the Newton fallback
  std::size_t grid = 24;
  double dedup = 1e-8;
};

namespace detail {

/// Common zeros of two polynomials in (u, v) by Newton from a grid of starts
/// over the box, deduplicated.
inline std::vector<UVPoint> grid_newton(const DMPoly& f0, const DMPoly& f1, const UVOptions& opt) {
  std::vector<UVPoint> out;
  const std::array<std::array<DMPoly, 2>, 2> jac{{{f0.derivative(0), f0.derivative(1)}, {f1.derivative(0), f1.derivative(1)}}};
  const double s1 = max_coef(f0), s2 = max_coef(f1);
  const int deg = std::max(f0.degree(), f1.degree());
  for (std::size_t i = 0; i < opt.grid; ++i)
    for (std::size_t j = 0; j < opt.grid; ++j) {
      std::array<double, 2> p{opt.lo + (opt.hi - opt.lo) * (i + 0.5) / opt.grid,
                              opt.lo + (opt.hi - opt.lo) * (j + 0.5) / opt.grid};
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const std::span<const double> pv(p);
        const double g0 = f0.eval(pv), g1 = f1.eval(pv);
        const double sc = 1.0 + std::pow(std::max(std::abs(p[0]), std::abs(p[1])), deg);
        if (std::abs(g0) <= 1e-13 * s1 * sc && std::abs(g1) <= 1e-13 * s2 * sc) {
          ok = true;
          break;
        }
        const double a = jac[0][0].eval(pv), b = jac[0][1].eval(pv);
        const double c = jac[1][0].eval(pv), d = jac[1][1].eval(pv);
        const double det = a * d - b * c;
        if (!(std::abs(det) > 0.0)) break;
        p[0] -= (g0 * d - g1 * b) / det;
        p[1] -= (a * g1 - c * g0) / det;
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) break;
      }
      if (ok && p[0] >= opt.lo && p[0] <= opt.hi && p[1] >= opt.lo && p[1] <= opt.hi)
        push_point(out, p[0], p[1], opt.dedup);
    }
  return out;
}

}  // namespace detail

/// Common real zeros of R1(x) and R2(x) on the slice A1 = A5 = u, A2 = A4 = v,
/// A3 = 1. Line components of the zero set are returned as lines; isolated
/// zeros as points. When R1 is a nondegenerate conic a Newton search from a
/// grid of starts over the box is used instead.
inline UVSolutionSet solve_uv(double x_target, const UVOptions& opt = {}) {
  const auto xs = cubic_roots();
  if (std::none_of(xs.begin(), xs.end(), [&](double r) { return std::abs(r - x_target) <= 1e-9; }))
    throw Error(ErrorCode::invalid_param, "x must be a root of 8x^3 - 20x^2 + 12x - 1");
  const auto rs = detail::uv_resultants(x_target);
  UVSolutionSet out;
  out.x = x_target;
  constexpr double kRel = 1e-9;

  if (auto split = detail::split_conic(rs.r1, kRel)) {
    std::array<bool, 2> shared{};
    for (std::size_t k = 0; k < 2; ++k) {
      shared[k] = detail::vanishes_on(rs.r2, (*split)[k], kRel);
      if (shared[k]) out.lines.push_back((*split)[k]);
    }
    for (std::size_t k = 0; k < 2; ++k) {
      if (shared[k]) continue;
      const auto& l = (*split)[k];
      // R2 vanishes where l meets a shared line; deflate those roots exactly.
      auto r2 = detail::restrict_to_line(rs.r2, l);
      for (const auto& s : out.lines) {
        const double c1 = s.a * -l.b + s.b * l.a;  // derivative along l
        if (std::abs(c1) <= 1e-12) continue;
        const double c0 = s.a * (-l.a * l.c) + s.b * (-l.b * l.c) + s.c;
        r2 = divmod(r2, UniPoly<double>({c0, c1})).first;
      }
      for (double t : detail::real_roots(r2)) {
        const auto [u, v] = detail::line_point(l, t);
        // multiple roots on a shared line come back with reduced accuracy
        if (out.contains(u, v, 1e-6)) continue;
        detail::push_point(out.points, u, v, opt.dedup);
      }
    }
  } else {
    out.points = detail::grid_newton(rs.r1, rs.r2, opt);
  }
  std::sort(out.points.begin(), out.points.end(), [](const UVPoint& a, const UVPoint& b) { return a.u < b.u; });
  return out;
}

/// (u, v, 1, v, u) times a3.
inline std::array<double, 5> uv_params(double u, double v, double a3 = 1.0) {
  return {u * a3, v * a3, a3, v * a3, u * a3};
}

}  // namespace kipp
