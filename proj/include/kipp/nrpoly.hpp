#pragma once

// Generating polynomials P_n(zeta, tau) of reciprocal matrices, division by
// linear factors zeta - (x tau + z), resultants in z and reduction modulo the
// cubic 8x^3 - 20x^2 + 12x - 1.
//
// Everything is templated on the coefficient ring: double, Rational, or
// MPoly<Rational> when the parameters A_j are kept symbolic.

#include "kipp/error.hpp"
#include "kipp/mpoly.hpp"
#include "kipp/poly.hpp"
#include "kipp/scalar.hpp"
#include "kipp/trimat.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace kipp {

template <class T>
struct GeneratingPoly {
  BivariatePoly<T> p;  // sum_i p_i(tau) zeta^i, monic of degree floor(n/2)
  std::size_t n = 0;
  /// Odd n: det = -lambda * P, the factor lambda is the origin component.
  bool origin_factor = false;
};

/// P_n from A_1..A_{n-1} by the three-term determinant recursion with
/// e_j^2 = (A_j + tau)/2 and zeta = lambda^2.
template <class T>
GeneratingPoly<T> generating_poly(std::span<const T> a) {
  using Tau = UniPoly<T>;
  using P = BivariatePoly<T>;
  const std::size_t n = a.size() + 1;
  const T half = T(1) / T(2);
  const P zeta = P::monomial(Tau(T(1)), 1);
  auto c = [&](std::size_t j) {  // 1-based
    return P(Tau({a[j - 1] * half, half}));
  };
  // Even-index E_m and odd-index O_m, only the last two of each kept.
  P e_prev;                // E_{m-2}
  P e_cur = P(Tau(T(1)));  // E_0
  P o_prev;                // O_{-1} = 0
  P o_cur = P(Tau(T(1)));  // O_1
  for (std::size_t m = 2; m <= n; ++m) {
    if (m % 2 == 0) {
      P next = zeta * o_cur - c(m - 1) * e_cur;
      e_prev = e_cur;
      e_cur = next;
    } else {
      P next = e_cur - c(m - 1) * o_cur;
      o_prev = o_cur;
      o_cur = next;
    }
  }
  (void)e_prev;
  (void)o_prev;
  GeneratingPoly<T> g;
  g.n = n;
  g.origin_factor = n % 2 == 1;
  g.p = g.origin_factor ? o_cur : e_cur;
  return g;
}

/// Exact generating polynomial of a parameter set (doubles convert exactly).
inline GeneratingPoly<Rational> generating_poly(const ReciprocalParams& p) {
  std::vector<Rational> a;
  for (double v : p.values()) a.push_back(to_rational(v));
  return generating_poly<Rational>(std::span<const Rational>(a));
}

inline GeneratingPoly<double> generating_poly_double(const ReciprocalParams& p) {
  return generating_poly<double>(p.values());
}

/// det(Re(e^{i theta} M) - lambda I) by the tridiagonal recursion on the
/// actual entries of M.
inline double pencil_determinant(const TridiagonalMatrix& m, double theta, double lambda) {
  const auto t = realified_pencil(m, theta);
  double prev = 1.0;
  double cur = t.d[0] - lambda;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double next = (t.d[j] - lambda) * cur - t.e[j - 1] * t.e[j - 1] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// |(-lambda)^{n mod 2} P(lambda^2, cos 2 theta) - det(...)|, relative to
/// max(1, sum of absolute term values).
template <class T>
double eval_residual(const GeneratingPoly<T>& g, const TridiagonalMatrix& m, double theta, double lambda) {
  const double zeta = lambda * lambda;
  const double tau = std::cos(2.0 * theta);
  double value = 0.0;
  double scale = 0.0;
  double zpow = 1.0;
  for (const auto& pi : g.p.coefficients()) {
    double tpow = 1.0;
    for (const auto& cij : pi.coefficients()) {
      const double term = to_double(cij) * zpow * tpow;
      value += term;
      scale += std::abs(term);
      tpow *= tau;
    }
    zpow *= zeta;
  }
  if (g.origin_factor) {
    value *= -lambda;
    scale *= std::abs(lambda);
  }
  const double det = pencil_determinant(m, theta, lambda);
  return std::abs(value - det) / std::max({1.0, scale, std::abs(det)});
}

template <class T>
struct LinearDivision {
  BivariatePoly<T> quotient;
  UniPoly<T> remainder;  // P(x tau + z, tau), a polynomial in tau
};

/// P = (zeta - (x tau + z)) * quotient + remainder(tau).
template <class T>
LinearDivision<T> divide_by_linear(const BivariatePoly<T>& p, const T& x, const T& z) {
  using Tau = UniPoly<T>;
  const Tau root({z, x});
  const auto& cs = p.coefficients();
  LinearDivision<T> out;
  if (cs.empty()) return out;
  std::vector<Tau> q(cs.size() - 1);
  Tau carry = cs.back();
  for (std::size_t i = cs.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = cs[i] + root * carry;
  }
  out.quotient = BivariatePoly<T>(std::move(q));
  out.remainder = carry;
  return out;
}

// ---------------------------------------------------------------------------
// n = 6: the remainder P_6(x tau + z, tau) with x, z symbolic.

/// Polynomial in z whose coefficients are polynomials in x.
template <class K>
using ZPoly = UniPoly<UniPoly<K>>;

template <class K>
struct SixRemainder {
  UniPoly<K> cubic_part;  // coefficient of tau^3 (polynomial in x only)
  ZPoly<K> q1;            // tau^2
  ZPoly<K> q2;            // tau^1
  ZPoly<K> q3;            // tau^0
};

/// Expands P_6(x tau + z, tau) = c(x) tau^3 + Q1 tau^2 + Q2 tau + Q3.
template <class K>
SixRemainder<K> six_remainder(std::span<const K> a) {
  if (a.size() != 5) throw Error(ErrorCode::wrong_size, "six_remainder needs five parameters");
  using X = UniPoly<K>;
  using Z = ZPoly<K>;
  using R = UniPoly<Z>;  // tau outermost
  const auto g = generating_poly<K>(a);
  // zeta = x tau + z
  const Z z_var = Z::monomial(X(K(1)), 1);
  const Z x_const = Z(X::monomial(K(1), 1));
  const R zeta({z_var, x_const});
  R acc;
  const auto& cs = g.p.coefficients();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    std::vector<Z> lifted;
    for (const K& c : it->coefficients()) lifted.push_back(lift<Z>(c));
    acc = acc * zeta + R(std::move(lifted));
  }
  SixRemainder<K> out;
  out.cubic_part = acc.coeff(3).coeff(0);
  out.q1 = acc.coeff(2);
  out.q2 = acc.coeff(1);
  out.q3 = acc.coeff(0);
  return out;
}

/// Sylvester resultant in z, f-rows first, highest degree first.
/// res(z - a, z - b) = a - b.
template <class K>
UniPoly<K> resultant_in_z(const ZPoly<K>& f, const ZPoly<K>& g) {
  if (f.zero() || g.zero())
    throw Error(ErrorCode::degenerate_input, "resultant of a zero polynomial (leading coefficients vanish)");
  using X = UniPoly<K>;
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const std::size_t n = static_cast<std::size_t>(g.degree());
  const std::size_t size = m + n;
  if (size == 0) return X(K(1));
  std::vector<std::vector<X>> s(size, std::vector<X>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f.coeff(m - k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(n - k);
  return determinant(s);
}

template <class K>
UniPoly<K> six_cubic() {
  return UniPoly<K>({K(-1), K(12), K(-20), K(8)});
}

/// Remainder modulo 8x^3 - 20x^2 + 12x - 1.
template <class K>
UniPoly<K> reduce_mod_cubic(const UniPoly<K>& f) {
  return divmod(f, six_cubic<K>()).second;
}

/// Roots of 8x^3 - 20x^2 + 12x - 1, ascending; equal to 1 + cos(2j pi/7), j = 3, 2, 1.
inline std::array<double, 3> cubic_roots() {
  auto p = [](double x) { return ((8.0 * x - 20.0) * x + 12.0) * x - 1.0; };
  auto dp = [](double x) { return (24.0 * x - 40.0) * x + 12.0; };
  const std::array<std::pair<double, double>, 3> brackets{{{0.0, 0.5}, {0.5, 1.0}, {1.0, 2.0}}};
  std::array<double, 3> roots{};
  for (std::size_t k = 0; k < 3; ++k) {
    auto [lo, hi] = brackets[k];
    const bool rising = p(lo) < 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((p(mid) < 0.0) == rising) lo = mid;
      else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) x -= p(x) / dp(x);
    roots[k] = x;
  }
  return roots;
}

/// Reduced resultants in the integer normalization of the closed-form tables:
/// R1 = 128 res(Q1, Q2), R2 = 512 res(Q1, Q3), both mod the cubic.
template <class K>
struct ReducedResultants {
  UniPoly<K> r1;
  UniPoly<K> r2;
};

template <class K>
ReducedResultants<K> reduced_resultants(std::span<const K> a) {
  const auto s = six_remainder<K>(a);
  ReducedResultants<K> out;
  out.r1 = reduce_mod_cubic<K>(resultant_in_z<K>(s.q1, s.q2)) * K(128);
  out.r2 = reduce_mod_cubic<K>(resultant_in_z<K>(s.q1, s.q3)) * K(512);
  return out;
}

}  // namespace kipp

#include "kipp/nrpoly_tables.hpp"
