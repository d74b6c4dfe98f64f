#pragma once

// Tridiagonal matrices with constant main diagonal, the reciprocal subclass
// (zero diagonal, b_j c_j = 1), and the Hermitian pencil Re(e^{i theta} M)
// reduced to a real symmetric tridiagonal matrix.

#include "kipp/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ranges>
#include <span>
#include <string>
#include <vector>

namespace kipp {

using Complex = std::complex<double>;

/// Tolerance on |b_j c_j - 1| for floating-point inputs.
inline constexpr double kReciprocityTol = 1e-12;

/// A(n; a, b, c): constant diagonal a, superdiagonal b, subdiagonal c.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(Complex a, std::vector<Complex> b, std::vector<Complex> c)
      : a_(a), b_(std::move(b)), c_(std::move(c)) {
    if (b_.size() != c_.size())
      throw Error(ErrorCode::invalid_param, "superdiagonal and subdiagonal lengths differ");
  }

  std::size_t size() const { return b_.size() + 1; }
  Complex diagonal() const { return a_; }
  std::span<const Complex> super() const { return b_; }
  std::span<const Complex> sub() const { return c_; }

  bool is_reciprocal() const {
    if (a_ != Complex{}) return false;
    return std::ranges::all_of(std::views::iota(std::size_t{0}, b_.size()), [&](std::size_t j) {
      return std::abs(b_[j] * c_[j] - Complex(1.0)) <= kReciprocityTol;
    });
  }

  /// Entry (i, j), zero-based.
  Complex operator()(std::size_t i, std::size_t j) const {
    if (i == j) return a_;
    if (j == i + 1) return b_[i];
    if (i == j + 1) return c_[j];
    return {};
  }

  /// M x for a dense vector.
  std::vector<Complex> apply(std::span<const Complex> x) const {
    const std::size_t n = size();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = a_ * x[i];
      if (i + 1 < n) s += b_[i] * x[i + 1];
      if (i > 0) s += c_[i - 1] * x[i - 1];
      y[i] = s;
    }
    return y;
  }

 private:
  Complex a_;
  std::vector<Complex> b_;
  std::vector<Complex> c_;
};

/// (A_1, ..., A_{n-1}) with A_j = (|b_j|^2 + |c_j|^2) / 2; every A_j >= 1.
class ReciprocalParams {
 public:
  explicit ReciprocalParams(std::vector<double> a) : a_(std::move(a)) {
    if (a_.empty()) throw Error(ErrorCode::invalid_param, "need at least one parameter (n >= 2)");
    for (double v : a_) {
      if (!std::isfinite(v) || v < 1.0 - kReciprocityTol)
        throw Error(ErrorCode::invalid_param, "A_j = " + std::to_string(v) + " is below 1");
    }
  }

  /// Matrix size n = number of parameters + 1.
  std::size_t n() const { return a_.size() + 1; }
  std::span<const double> values() const { return a_; }
  double operator[](std::size_t j) const { return a_.at(j); }

  bool all_equal(double rel_tol = 0.0) const {
    const double ref = a_.front();
    return std::ranges::all_of(a_, [&](double v) { return std::abs(v - ref) <= rel_tol * std::abs(ref); });
  }

  friend bool operator==(const ReciprocalParams&, const ReciprocalParams&) = default;

 private:
  std::vector<double> a_;
};

/// Real symmetric tridiagonal matrix: diagonal d, nonnegative off-diagonal e.
struct SymTridiagonal {
  std::vector<double> d;
  std::vector<double> e;

  std::size_t size() const { return d.size(); }

  double inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double r = std::abs(d[i]);
      if (i > 0) r += std::abs(e[i - 1]);
      if (i < e.size()) r += std::abs(e[i]);
      m = std::max(m, r);
    }
    return m;
  }
};

/// A(n; 0, b, b^{-1}).
inline TridiagonalMatrix build_reciprocal(std::span<const Complex> b) {
  std::vector<Complex> c;
  c.reserve(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == Complex{})
      throw Error(ErrorCode::zero_superdiagonal, "b_" + std::to_string(j + 1) + " is zero");
    c.push_back(1.0 / b[j]);
  }
  return TridiagonalMatrix({}, std::vector<Complex>(b.begin(), b.end()), std::move(c));
}

inline TridiagonalMatrix build_reciprocal(std::span<const double> b) {
  std::vector<Complex> bc(b.begin(), b.end());
  return build_reciprocal(std::span<const Complex>(bc));
}

inline ReciprocalParams a_params(const TridiagonalMatrix& m) {
  if (!m.is_reciprocal()) throw Error(ErrorCode::not_reciprocal, "matrix is not reciprocal");
  std::vector<double> a;
  a.reserve(m.super().size());
  for (const Complex& b : m.super()) {
    const double s = std::norm(b);
    a.push_back((s + 1.0 / s) / 2.0);
  }
  return ReciprocalParams(std::move(a));
}

/// Canonical representative with positive real superdiagonal.
inline TridiagonalMatrix params_to_matrix(const ReciprocalParams& p) {
  std::vector<Complex> b;
  b.reserve(p.values().size());
  for (double a : p.values()) {
    const double aa = std::max(a, 1.0);
    b.emplace_back(std::sqrt(aa + std::sqrt(aa * aa - 1.0)));
  }
  return build_reciprocal(std::span<const Complex>(b));
}

/// Re(e^{i theta} M) as a symmetric tridiagonal matrix plus the diagonal
/// unitary D with Re(e^{i theta} M) = D T D^*.
struct RealifiedPencil {
  SymTridiagonal t;
  std::vector<Complex> phases;
};

inline RealifiedPencil realified_pencil_with_phases(const TridiagonalMatrix& m, double theta) {
  const std::size_t n = m.size();
  const Complex rot = std::polar(1.0, theta);
  RealifiedPencil out;
  out.t.d.assign(n, (rot * m.diagonal()).real());
  out.t.e.resize(n - 1);
  out.phases.assign(n, Complex(1.0));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    // Hermitian entry (j, j+1) of Re(e^{i theta} M).
    const Complex h = (rot * m.super()[j] + std::conj(rot * m.sub()[j])) / 2.0;
    const double mod = std::abs(h);
    out.t.e[j] = mod;
    out.phases[j + 1] = mod > 0.0 ? out.phases[j] * std::conj(h) / mod : out.phases[j];
  }
  return out;
}

inline SymTridiagonal realified_pencil(const TridiagonalMatrix& m, double theta) {
  return realified_pencil_with_phases(m, theta).t;
}

/// Normal (indeed Hermitian up to diagonal unitary similarity) iff all A_j = 1.
inline bool is_normal_reciprocal(const ReciprocalParams& p, double tol = kReciprocityTol) {
  return std::ranges::all_of(p.values(), [&](double a) { return std::abs(a - 1.0) <= tol; });
}

/// 2 cos(j pi / (n + 1)), j = 1..n, in descending order.
inline std::vector<double> hermitian_toeplitz_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t j = 1; j <= n; ++j)
    s[j - 1] = 2.0 * std::cos(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n + 1));
  return s;
}

}  // namespace kipp
