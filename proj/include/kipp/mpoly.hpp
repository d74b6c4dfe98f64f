#pragma once

// Sparse multivariate polynomials. Used to run the exact pipelines with the
// parameters A_1..A_5 (or a two-variable slice of them) kept symbolic.

#include "kipp/error.hpp"
#include "kipp/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace kipp {

template <class C>
class MPoly {
 public:
  /// Exponent vector with trailing zeros trimmed; empty is the constant monomial.
  using Exponents = std::vector<std::uint16_t>;
  using coefficient_type = C;

  MPoly() = default;
  MPoly(int c) : MPoly(C(c)) {}  // NOLINT: implicit, used as a ring scalar
  MPoly(const C& c) {            // NOLINT
    if (!is_zero(c)) terms_[{}] = c;
  }

  static MPoly variable(std::size_t index) {
    Exponents e(index + 1, 0);
    e[index] = 1;
    MPoly p;
    p.terms_[e] = C(1);
    return p;
  }

  static MPoly term(const C& c, Exponents e) {
    trim(e);
    MPoly p;
    if (!is_zero(c)) p.terms_[std::move(e)] = c;
    return p;
  }

  bool zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  C constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? C{} : it->second;
  }
  const std::map<Exponents, C>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous(int deg) const {
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += k;
      if (s != deg) return false;
    }
    return true;
  }

  template <class V>
  V eval(std::span<const V> values) const {
    V acc{};
    for (const auto& [e, c] : terms_) {
      V t = scalar_cast<V>(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (i >= values.size()) throw Error(ErrorCode::degenerate_input, "MPoly::eval: too few values");
        for (std::uint16_t k = 0; k < e[i]; ++k) t = t * values[i];
      }
      acc = acc + t;
    }
    return acc;
  }

  MPoly derivative(std::size_t var) const {
    MPoly out;
    for (const auto& [e, c] : terms_) {
      if (var >= e.size() || e[var] == 0) continue;
      Exponents f = e;
      const int k = f[var]--;
      out.add_term(std::move(f), c * C(k));
    }
    return out;
  }

  /// Substitutes polynomials for every variable.
  MPoly compose(std::span<const MPoly> subs) const {
    MPoly out;
    for (const auto& [e, c] : terms_) {
      MPoly t(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint16_t k = 0; k < e[i]; ++k) t = t * subs[i];
      out = out + t;
    }
    return out;
  }

  template <class D>
  MPoly<D> cast() const {
    MPoly<D> out;
    for (const auto& [e, c] : terms_) out = out + MPoly<D>::term(scalar_cast<D>(c), e);
    return out;
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, C{} - c);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) { return MPoly{} - a; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }
  /// Division by a nonzero constant only.
  friend MPoly operator/(const MPoly& a, const MPoly& b) {
    if (!b.is_constant() || b.zero()) throw Error(ErrorCode::degenerate_input, "MPoly division by a non-constant");
    const C d = b.constant_term();
    MPoly out;
    for (const auto& [e, c] : a.terms_) out.terms_[e] = c / d;
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << (i < names.size() ? names[i] : "v" + std::to_string(i));
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  void add_term(Exponents e, const C& c) {
    if (is_zero(c)) return;
    trim(e);
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  std::map<Exponents, C> terms_;
};

template <class C>
bool is_zero(const MPoly<C>& p) {
  return p.zero();
}

using RationalMPoly = MPoly<Rational>;

}  // namespace kipp
