#pragma once

// Closed forms for n = 6: coefficients q_ij of Q1, Q2, Q3 as polynomials in x,
// the reduced resultants R_j(x) = r_j2 x^2 + r_j1 x + r_j0, and the quadratic
// R(x) behind the ellipse centers.
//
// Two versions of the resultant coefficients exist. The implemented table
// agrees with the Sylvester pipeline. The transcribed table is the
// commonly printed form; it contains four misprints (r11, r22, and two in r21)
// and is kept only so `verify` can report the differences.

#include "kipp/poly.hpp"

#include <array>
#include <span>

namespace kipp {

template <class T>
struct QTable {
  UniPoly<T> q11, q10;
  UniPoly<T> q22, q21, q20;
  UniPoly<T> q32, q31, q30;  // Q3 is monic in z
};

template <class T>
QTable<T> q_table(std::span<const T> a) {
  const T &A1 = a[0], &A2 = a[1], &A3 = a[2], &A4 = a[3], &A5 = a[4];
  const T two(2), four(4), eight(8);
  const T s = A1 + A2 + A3 + A4 + A5;
  const T w = T(3) * A1 + two * A2 + two * A3 + two * A4 + T(3) * A5;
  const T odd = A1 + A3 + A5;
  const T pair = A1 * A3 + A5 * A3 + A1 * A4 + A2 * A4 + A1 * A5 + A2 * A5;
  const T opair = A1 * A3 + A5 * A3 + A1 * A5;
  QTable<T> q;
  q.q11 = UniPoly<T>({T(3) / two, T(-5), T(3)});
  q.q10 = UniPoly<T>({T{} - odd / eight, w / four, T{} - s / two});
  q.q22 = UniPoly<T>({T(-5) / two, T(3)});
  q.q21 = UniPoly<T>({w / four, T{} - s});
  q.q20 = UniPoly<T>({T{} - opair / eight, pair / four});
  q.q32 = UniPoly<T>(T{} - s / two);
  q.q31 = UniPoly<T>(pair / four);
  q.q30 = UniPoly<T>(T{} - A1 * A3 * A5 / eight);
  return q;
}

/// {r_j2, r_j1, r_j0} for j = 1 (quadratic in A) and j = 2 (cubic in A).
template <class T>
struct RTable {
  std::array<T, 3> r1;
  std::array<T, 3> r2;

  UniPoly<T> poly1() const { return UniPoly<T>({r1[2], r1[1], r1[0]}); }
  UniPoly<T> poly2() const { return UniPoly<T>({r2[2], r2[1], r2[0]}); }
};

namespace detail {

template <class T>
RTable<T> r_table_impl(std::span<const T> a, bool transcribed) {
  const T &A1 = a[0], &A2 = a[1], &A3 = a[2], &A4 = a[3], &A5 = a[4];
  auto k = [](int v) { return T(v); };
  RTable<T> t;

  t.r1[0] = k(-8) * (A1 * A1 + A2 * A3 + A3 * A4 + A5 * A5) - k(28) * (A1 * A2 - A1 * A4 - A2 * A5 + A4 * A5) +
            k(4) * (A1 * A3 + A3 * A5 + A3 * A3) - k(12) * (A2 * A2 + A4 * A4 - A1 * A5) + k(32) * A2 * A4;

  const T r11_mixed = transcribed ? A3 * A5 : A4 * A5;
  t.r1[1] = k(12) * (A2 * A2 + A4 * A4) + k(18) * (A1 * A2 - A2 * A4 + r11_mixed) - k(24) * (A1 * A4 + A2 * A5) +
            k(6) * (A1 * A3 - A3 * A3 + A3 * A5);

  t.r1[2] = k(4) * (A1 * A1 - A2 * A2 - A4 * A4 + A5 * A5 + A2 * A3 + A3 * A4) - (A1 * A2 + A2 * A4 + A4 * A5) -
            k(7) * (A1 * A3 + A3 * A5) + k(6) * (A1 * A4 - A1 * A5 + A2 * A5) + k(3) * A3 * A3;

  const T A1A2A4 = transcribed ? T{} - A1 * A2 * A4 : A1 * A2 * A4;
  t.r2[0] = k(-12) * (A1 * A1 * A1 + A5 * A5 * A5) - k(48) * (A1 * A1 * A2 + A4 * A5 * A5) -
            k(60) * (A1 * A2 * A2 + A4 * A4 * A5) - k(16) * (A2 * A2 * A2 + A4 * A4 * A4) +
            k(44) * (A1 * A3 * A3 - A1 * A2 * A3 + A1 * A2 * A5 + A3 * A3 * A5 + A1 * A4 * A5 - A3 * A4 * A5) -
            k(36) * (A2 * A2 * A3 - A2 * A2 * A4 - A2 * A4 * A4 + A3 * A4 * A4) -
            k(24) * (A2 * A3 * A3 + A3 * A3 * A4 - A1 * A4 * A4 - A2 * A2 * A5) +
            k(8) * (A1 * A1 * A4 + A2 * A5 * A5) +
            k(20) * (A1A2A4 + A1 * A1 * A5 + A2 * A4 * A5 + A1 * A5 * A5) +
            k(68) * (A1 * A3 * A4 + A2 * A3 * A5) - k(4) * A3 * A3 * A3 + k(40) * A2 * A3 * A4 -
            k(84) * A1 * A3 * A5;

  const T cubes = transcribed ? A1 * A1 * A1 * A5 * A5 * A5 : A1 * A1 * A1 + A5 * A5 * A5;
  const T sq = transcribed ? A1 * A1 : A1 * A1 * A4;
  t.r2[1] = k(14) * (cubes - A1 * A4 * A4 - A2 * A2 * A5) + k(56) * (A1 * A2 * A2 + A4 * A4 * A5) +
            k(16) * (A2 * A2 * A2 + A4 * A4 * A4) - k(12) * (A1 * A1 * A3 + A3 * A5 * A5) +
            k(30) * (A2 * A2 * A3 + A3 * A4 * A4) - k(50) * (A1 * A3 * A3 + A3 * A3 * A5) +
            k(20) * (A2 * A3 * A3 + A3 * A3 * A4) - k(22) * (sq + A2 * A2 * A4 + A2 * A4 * A4 + A2 * A5 * A5) -
            k(28) * (A1 * A2 * A4 + A1 * A1 * A5 + A2 * A4 * A5 + A1 * A5 * A5) -
            k(66) * (A1 * A3 * A4 + A2 * A3 * A5) - k(44) * (A1 * A2 * A5 + A1 * A4 * A5) +
            k(48) * (A1 * A1 * A2 + A4 * A5 * A5) + k(46) * (A1 * A2 * A3 + A3 * A4 * A5) + k(6) * A3 * A3 * A3 +
            k(158) * A1 * A3 * A5 - k(52) * A2 * A3 * A4;

  t.r2[2] = k(-2) * (A1 * A1 * A1 + A2 * A2 * A2 + A3 * A3 * A3 + A4 * A4 * A4 + A5 * A5 * A5 + A2 * A3 * A3 +
                     A3 * A3 * A4) -
            k(4) * (A1 * A1 * A2 + A1 * A2 * A2 + A1 * A4 * A4 + A2 * A2 * A5 + A4 * A4 * A5 + A4 * A5 * A5) +
            k(6) * (A1 * A1 * A3 + A1 * A2 * A4 - A2 * A2 * A4 - A2 * A4 * A4 + A1 * A2 * A5 + A1 * A4 * A5 +
                    A2 * A4 * A5 + A3 * A5 * A5) -
            k(10) * (A1 * A2 * A3 + A3 * A4 * A5 - A1 * A1 * A4 - A2 * A5 * A5) - (A2 * A2 * A3 + A3 * A4 * A4) +
            k(12) * (A1 * A3 * A3 + A3 * A3 * A5) + k(11) * (A1 * A3 * A4 + A2 * A3 * A5) +
            k(8) * (A1 * A1 * A5 + A1 * A5 * A5) + k(19) * A2 * A3 * A4 - k(65) * A1 * A3 * A5;
  return t;
}

}  // namespace detail

/// Resultant coefficients that agree with the Sylvester pipeline.
template <class T>
RTable<T> r_table(std::span<const T> a) {
  return detail::r_table_impl<T>(a, false);
}

/// Resultant coefficients as commonly printed (with misprints).
template <class T>
RTable<T> r_table_transcribed(std::span<const T> a) {
  return detail::r_table_impl<T>(a, true);
}

/// R(x) = r2 x^2 + r1 x + r0 with z_j = R(x_j) / (8 (x_j - x_i)(x_j - x_k)).
template <class T>
std::array<T, 3> center_poly(std::span<const T> a) {
  const T &A1 = a[0], &A2 = a[1], &A3 = a[2], &A4 = a[3], &A5 = a[4];
  return {T(4) * (A1 + A2 + A3 + A4 + A5), T(-6) * (A1 + A5) - T(4) * (A2 + A3 + A4), A1 + A3 + A5};
}

/// As commonly printed: the 4(A2+A3+A4) term carries the wrong sign.
template <class T>
std::array<T, 3> center_poly_transcribed(std::span<const T> a) {
  const T &A1 = a[0], &A2 = a[1], &A3 = a[2], &A4 = a[3], &A5 = a[4];
  return {T(4) * (A1 + A2 + A3 + A4 + A5), T(4) * (A2 + A3 + A4) - T(6) * (A1 + A5), A1 + A3 + A5};
}

}  // namespace kipp
