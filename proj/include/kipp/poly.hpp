#pragma once

// Dense univariate polynomials over a commutative ring, and bivariate
// polynomials built by nesting. Coefficients are stored low degree first.

#include "kipp/error.hpp"
#include "kipp/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace kipp {

template <class T>
class UniPoly {
 public:
  using value_type = T;

  UniPoly() = default;
  explicit UniPoly(int c) : UniPoly(T(c)) {}
  explicit UniPoly(T c) : c_{std::move(c)} { trim(); }
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static UniPoly monomial(T c, std::size_t deg) {
    std::vector<T> v(deg + 1);
    v[deg] = std::move(c);
    return UniPoly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  /// Coefficient of x^i; zero past the degree.
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
  const T& operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<T>& coefficients() const { return c_; }
  T leading() const { return c_.empty() ? T{} : c_.back(); }

  void set(std::size_t i, T v) {
    if (i >= c_.size()) c_.resize(i + 1);
    c_[i] = std::move(v);
    trim();
  }

  /// Horner evaluation in any ring U that T-coefficients can be added to.
  template <class U>
  U eval(const U& x) const {
    U acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  T eval(const T& x) const {
    T acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  template <class F>
  auto map(F f) const {
    using R = decltype(f(std::declval<const T&>()));
    std::vector<R> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return UniPoly<R>(std::move(out));
  }

  UniPoly derivative() const {
    std::vector<T> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * T(static_cast<int>(i)));
    return UniPoly(std::move(out));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) {
    std::vector<T> out;
    out.reserve(a.c_.size());
    for (const auto& v : a.c_) out.push_back(T{} - v);
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.zero() || b.zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const UniPoly& a, const T& s) {
    std::vector<T> out;
    out.reserve(a.c_.size());
    for (const auto& v : a.c_) out.push_back(v * s);
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const T& s, const UniPoly& a) { return a * s; }

  /// Division by a constant polynomial only.
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) {
    if (b.degree() != 0) throw Error(ErrorCode::degenerate_input, "UniPoly division by a non-constant");
    std::vector<T> out;
    out.reserve(a.c_.size());
    for (const auto& v : a.c_) out.push_back(v / b.c_[0]);
    return UniPoly(std::move(out));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
bool is_zero(const UniPoly<T>& p) {
  return p.zero();
}

/// Polynomial in (outer, inner) variables: sum_i p_i(inner) * outer^i.
/// For generating polynomials the outer variable is zeta = lambda^2 and the
/// inner one is tau = cos(2 theta).
template <class T>
using BivariatePoly = UniPoly<UniPoly<T>>;

/// Coefficient of outer^i inner^j.
template <class T>
T coeff(const BivariatePoly<T>& p, std::size_t i, std::size_t j) {
  return p.coeff(i).coeff(j);
}

template <class T>
T eval2(const BivariatePoly<T>& p, const T& outer, const T& inner) {
  T acc{};
  const auto& cs = p.coefficients();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * outer + it->eval(inner);
  return acc;
}

/// Embeds a scalar as a constant of a polynomial ring (possibly nested).
template <class Ring, class T>
Ring lift(const T& v) {
  if constexpr (std::is_same_v<Ring, T>) {
    return v;
  } else {
    return Ring(lift<typename Ring::value_type>(v));
  }
}

template <class To, class From>
UniPoly<To> poly_cast(const UniPoly<From>& p) {
  return p.map([](const From& v) { return scalar_cast<To>(v); });
}

template <class To, class From>
BivariatePoly<To> poly_cast(const BivariatePoly<From>& p) {
  return p.map([](const UniPoly<From>& q) { return poly_cast<To>(q); });
}

/// Quotient and remainder of a / b over a field of coefficients.
template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divmod(const UniPoly<T>& a, const UniPoly<T>& b) {
  if (b.zero()) throw Error(ErrorCode::degenerate_input, "division by the zero polynomial");
  std::vector<T> rem = a.coefficients();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {UniPoly<T>{}, a};
  std::vector<T> quo(static_cast<std::size_t>(da - db + 1));
  const T lead = b.leading();
  for (int k = da; k >= db; --k) {
    const T q = rem[k] / lead;
    quo[k - db] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - q * b.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly<T>(std::move(quo)), UniPoly<T>(std::move(rem))};
}

/// Determinant over a commutative ring by cofactor expansion along the first
/// column. Intended for the small Sylvester matrices used here (n <= 6).
template <class T>
T determinant(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T acc{};
  for (std::size_t r = 0; r < n; ++r) {
    if (is_zero(m[r][0])) continue;
    std::vector<std::vector<T>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      minor.emplace_back(m[i].begin() + 1, m[i].end());
    }
    T term = m[r][0] * determinant(minor);
    acc = (r % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace kipp
