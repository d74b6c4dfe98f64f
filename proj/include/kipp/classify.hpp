#pragma once

// Ellipticity classifiers for reciprocal matrices of sizes 3..6 and for the
// all-equal case of any size. A linear factor zeta - (x tau + z) of the
// generating polynomial is an origin-centred, axis-aligned ellipse with
// semi-axes sqrt(z + x) along the real axis and sqrt(z - x) along the
// imaginary axis.

#include "kipp/eigsolve.hpp"
#include "kipp/error.hpp"
#include "kipp/nrpoly.hpp"
#include "kipp/tel.hpp"
#include "kipp/trimat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace kipp {

inline constexpr double kDefaultTol = 1e-9;

struct EllipseComponent {
  double x = 0.0;
  double z = 0.0;
  bool degenerate = false;

  double semi_u() const { return std::sqrt(std::max(0.0, z + x)); }
  double semi_v() const { return std::sqrt(std::max(0.0, z - x)); }
  double semi_major() const { return std::max(semi_u(), semi_v()); }
  double semi_minor() const { return std::min(semi_u(), semi_v()); }
  /// Foci at +-focal() on the major axis.
  double focal() const { return std::sqrt(2.0 * std::abs(x)); }
};

enum class Kind {
  normal,
  all_components_elliptic,
  boundary_ellipse_only,
  inner_ellipse_only,  // an elliptic component exists but it is not the boundary of W(A)
  non_elliptic,
  toeplitz_case,
};

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::normal: return "normal";
    case Kind::all_components_elliptic: return "all_components_elliptic";
    case Kind::boundary_ellipse_only: return "boundary_ellipse_only";
    case Kind::inner_ellipse_only: return "inner_ellipse_only";
    case Kind::non_elliptic: return "non_elliptic";
    case Kind::toeplitz_case: return "toeplitz_case";
  }
  return "unknown";
}

struct Classification {
  Kind kind = Kind::non_elliptic;
  std::vector<EllipseComponent> components;  // z descending
  bool origin_component = false;
  std::map<std::string, double> diagnostics;

  /// W(A) is an elliptical disk.
  bool elliptic_range() const {
    return kind == Kind::all_components_elliptic || kind == Kind::boundary_ellipse_only ||
           (kind == Kind::toeplitz_case && !components.empty() && !components.front().degenerate);
  }
};

namespace detail {

inline void require_size(const ReciprocalParams& p, std::size_t n, const char* op) {
  if (p.n() != n)
    throw Error(ErrorCode::wrong_size,
                std::string(op) + " needs n = " + std::to_string(n) + ", got n = " + std::to_string(p.n()));
}

inline double param_scale(const ReciprocalParams& p) {
  double s = 0.0;
  for (double v : p.values()) s = std::max(s, std::abs(v));
  return std::max(1.0, s);
}

inline double param_sum(const ReciprocalParams& p) {
  const auto v = p.values();
  return std::accumulate(v.begin(), v.end(), 0.0);
}

inline EllipseComponent make_component(double x, double z, double tol) {
  EllipseComponent c{x, z, false};
  c.degenerate = z - std::abs(x) <= tol * std::max(1.0, std::abs(z));
  return c;
}

inline void sort_components(std::vector<EllipseComponent>& cs) {
  std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.z > b.z; });
}

inline bool normal_params(const ReciprocalParams& p, double tol) {
  return std::ranges::all_of(p.values(), [&](double a) { return std::abs(a - 1.0) <= tol; });
}

inline Classification normal_result(const ReciprocalParams& p) {
  Classification c;
  c.kind = Kind::normal;
  c.origin_component = p.n() % 2 == 1;
  c.diagnostics["spectrum_endpoint"] = 2.0 * std::cos(std::numbers::pi / static_cast<double>(p.n() + 1));
  return c;
}

/// Largest |remainder coefficient| of P divided by zeta - (x tau + z), relative.
inline double factor_remainder(const ReciprocalParams& p, const EllipseComponent& c) {
  auto g = generating_poly_double(p);
  auto d = divide_by_linear(g.p, c.x, c.z);
  double worst = 0.0;
  for (double v : d.remainder.coefficients()) worst = std::max(worst, std::abs(v));
  const double s = param_scale(p);
  return worst / std::pow(s, static_cast<double>(p.n() / 2));
}

}  // namespace detail

/// Pairwise strict nesting z - z' > |x - x'| for z > z'.
inline bool components_nested(const std::vector<EllipseComponent>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const auto& hi = cs[i].z >= cs[j].z ? cs[i] : cs[j];
      const auto& lo = cs[i].z >= cs[j].z ? cs[j] : cs[i];
      if (!(hi.z - lo.z > std::abs(hi.x - lo.x))) return false;
    }
  return true;
}

/// max over a theta grid of |lambda_max(theta) - sqrt(x tau + z)|, relative to
/// the component size. Zero iff the component is the boundary of W(A).
inline double boundary_gap(const ReciprocalParams& p, const EllipseComponent& c, std::size_t grid = 96) {
  const auto m = params_to_matrix(p);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
    const double lmax = eig_all(realified_pencil(m, theta)).values.back();
    const double support = std::sqrt(std::max(0.0, c.x * std::cos(2.0 * theta) + c.z));
    worst = std::max(worst, std::abs(lmax - support));
  }
  return worst / std::max(1e-300, c.semi_major());
}

inline Classification classify3(const ReciprocalParams& p, double tol = kDefaultTol) {
  detail::require_size(p, 3, "classify3");
  if (detail::normal_params(p, tol)) return detail::normal_result(p);
  Classification c;
  c.kind = Kind::all_components_elliptic;
  c.origin_component = true;
  c.components.push_back(detail::make_component(1.0, (p[0] + p[1]) / 2.0, tol));
  c.diagnostics["remainder"] = detail::factor_remainder(p, c.components[0]);
  return c;
}

inline constexpr double kGolden = std::numbers::phi;

inline Classification classify4(const ReciprocalParams& p, double tol = kDefaultTol) {
  detail::require_size(p, 4, "classify4");
  if (detail::normal_params(p, tol)) return detail::normal_result(p);
  const double a1 = p[0], a2 = p[1], a3 = p[2];
  const double scale = detail::param_scale(p);
  const double branch1 = a2 - (kGolden * a1 - a3 / kGolden);
  const double branch2 = a2 - (kGolden * a3 - a1 / kGolden);
  const double s = a1 + a2 + a3;
  const double root = std::sqrt(std::max(0.0, s * s - 4.0 * a1 * a3));
  const double cons_rhs = std::sqrt(5.0) / 5.0 * (a1 + 3.0 * a2 + a3);

  Classification c;
  c.diagnostics["branch1_residual"] = branch1;
  c.diagnostics["branch2_residual"] = branch2;
  c.diagnostics["cons_lhs"] = root;
  c.diagnostics["cons_rhs"] = cons_rhs;
  c.diagnostics["cons_residual"] = root - cons_rhs;
  const bool ok1 = std::abs(branch1) <= tol * scale;
  const bool ok2 = std::abs(branch2) <= tol * scale;
  c.diagnostics["branch"] = ok1 ? 1.0 : ok2 ? 2.0 : 0.0;
  if (!ok1 && !ok2) {
    c.kind = Kind::non_elliptic;
    return c;
  }
  c.kind = Kind::all_components_elliptic;
  const double sq5 = std::sqrt(5.0);
  c.components.push_back(detail::make_component((3.0 + sq5) / 4.0, (s + root) / 4.0, tol));
  c.components.push_back(detail::make_component((3.0 - sq5) / 4.0, (s - root) / 4.0, tol));
  detail::sort_components(c.components);
  c.diagnostics["remainder"] = detail::factor_remainder(p, c.components[0]);
  return c;
}

inline Classification classify5(const ReciprocalParams& p, double tol = kDefaultTol) {
  detail::require_size(p, 5, "classify5");
  if (detail::normal_params(p, tol)) return detail::normal_result(p);
  const double a1 = p[0], a2 = p[1], a3 = p[2], a4 = p[3];
  const double scale = detail::param_scale(p);
  const double s = a1 + a2 + a3 + a4;
  const double d = std::sqrt(std::max(0.0, s * s - 4.0 * (a1 * a3 + a1 * a4 + a2 * a4)));
  const double branch1 = a1 - a4;
  const double branch2 = (a1 - a4) - 2.0 * (a3 - a2);

  Classification c;
  c.origin_component = true;
  c.diagnostics["D"] = d;
  c.diagnostics["A2_plus_A3"] = a2 + a3;
  c.diagnostics["branch1_residual"] = branch1;
  c.diagnostics["branch2_residual"] = branch2;
  const bool ok1 = std::abs(branch1) <= tol * scale;
  const bool ok2 = std::abs(branch2) <= tol * scale;
  c.diagnostics["branch"] = ok1 ? 1.0 : ok2 ? 2.0 : 0.0;
  if (!ok1 && !ok2) {
    c.kind = Kind::non_elliptic;
    return c;
  }
  c.kind = Kind::all_components_elliptic;
  if (ok1) {
    c.components.push_back(detail::make_component(1.5, (a1 + a2 + a3) / 2.0, tol));
    c.components.push_back(detail::make_component(0.5, a1 / 2.0, tol));
  } else {
    c.components.push_back(detail::make_component(1.5, (2.0 * a3 + a4) / 2.0, tol));
    c.components.push_back(detail::make_component(0.5, (a3 + a4 - a2) / 2.0, tol));
  }
  detail::sort_components(c.components);
  c.diagnostics["remainder"] = std::max(detail::factor_remainder(p, c.components[0]),
                                        detail::factor_remainder(p, c.components[1]));
  return c;
}

/// z_j for the three roots x_j (ascending), from the linear system
/// sum z_j = s1, sum z_j (x_i + x_k) = s2, sum z_j x_i x_k = s3.
inline std::array<double, 3> ellipse_centers_z(const ReciprocalParams& p) {
  detail::require_size(p, 6, "ellipse_centers_z");
  const double a1 = p[0], a2 = p[1], a3 = p[2], a4 = p[3], a5 = p[4];
  const double s1 = 0.5 * (a1 + a2 + a3 + a4 + a5);
  const double s2 = 0.75 * (a1 + a5) + 0.5 * (a2 + a3 + a4);
  const double s3 = 0.125 * (a1 + a3 + a5);
  const auto x = cubic_roots();
  std::array<double, 3> z{};
  for (std::size_t j = 0; j < 3; ++j) {
    const double xi = x[(j + 1) % 3], xk = x[(j + 2) % 3];
    z[j] = (s1 * x[j] * x[j] - s2 * x[j] + s3) / ((x[j] - xi) * (x[j] - xk));
  }
  return z;
}

/// z_j = R(x_j) / (8 (x_j - x_i)(x_j - x_k)) for a given coefficient triple {r2, r1, r0}.
inline std::array<double, 3> centers_from_r(const std::array<double, 3>& r) {
  const auto x = cubic_roots();
  std::array<double, 3> z{};
  for (std::size_t j = 0; j < 3; ++j) {
    const double xi = x[(j + 1) % 3], xk = x[(j + 2) % 3];
    z[j] = (r[0] * x[j] * x[j] + r[1] * x[j] + r[2]) / (8.0 * (x[j] - xi) * (x[j] - xk));
  }
  return z;
}

/// Scaled tel residuals: each divided by (sum A)^degree.
inline std::array<double, 4> scaled_tel_residuals(std::span<const double> a) {
  const auto r = tel_residuals<double>(a);
  const double s = std::accumulate(a.begin(), a.end(), 0.0);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = r[i] / std::pow(s, kTelDegrees[i]);
  return out;
}

inline Classification three_ellipses6(const ReciprocalParams& p, double tol = kDefaultTol) {
  detail::require_size(p, 6, "three_ellipses6");
  const auto r = scaled_tel_residuals(p.values());
  Classification c;
  c.diagnostics["tel2"] = r[0];
  c.diagnostics["tel3"] = r[1];
  c.diagnostics["tel1"] = r[2];
  c.diagnostics["tel4"] = r[3];
  if (detail::normal_params(p, tol)) {
    auto n = detail::normal_result(p);
    n.diagnostics.insert(c.diagnostics.begin(), c.diagnostics.end());
    return n;
  }
  const bool pass = std::abs(r[0]) <= tol && std::abs(r[1]) <= tol && std::abs(r[2]) <= tol;
  if (!pass) {
    c.kind = Kind::non_elliptic;
    return c;
  }
  const auto x = cubic_roots();
  const auto z = ellipse_centers_z(p);
  for (std::size_t j = 0; j < 3; ++j) c.components.push_back(detail::make_component(x[j], z[j], tol));
  detail::sort_components(c.components);
  c.diagnostics["nested"] = components_nested(c.components) ? 1.0 : 0.0;
  double rem = 0.0;
  for (const auto& comp : c.components) rem = std::max(rem, detail::factor_remainder(p, comp));
  c.diagnostics["remainder"] = rem;
  c.kind = Kind::all_components_elliptic;
  return c;
}

inline Classification contains_ellipse6(const ReciprocalParams& p, double tol = kDefaultTol) {
  detail::require_size(p, 6, "contains_ellipse6");
  if (detail::normal_params(p, tol)) return detail::normal_result(p);
  std::vector<Rational> aq;
  for (double v : p.values()) aq.push_back(to_rational(v));
  const auto rr = reduced_resultants<Rational>(aq);
  const auto r1 = poly_cast<double>(rr.r1);
  const auto r2 = poly_cast<double>(rr.r2);
  const auto q = q_table<double>(p.values());
  const double sum = detail::param_sum(p);
  const auto x = cubic_roots();

  Classification c;
  for (std::size_t j = 0; j < 3; ++j) {
    const std::string tag = "x" + std::to_string(j + 1);
    const double v1 = r1.eval(x[j]) / (sum * sum);
    const double v2 = r2.eval(x[j]) / (sum * sum * sum);
    c.diagnostics["R1_" + tag] = v1;
    c.diagnostics["R2_" + tag] = v2;
    if (std::abs(v1) > tol || std::abs(v2) > tol) continue;
    const double q11 = q.q11.eval(x[j]);
    if (std::abs(q11) <= tol)
      throw Error(ErrorCode::inconclusive, "q11 vanishes at the common root " + tag);
    const double z = -q.q10.eval(x[j]) / q11;
    const double q2 = ((q.q22.eval(x[j]) * z + q.q21.eval(x[j])) * z + q.q20.eval(x[j])) / (sum * sum);
    const double q3 = (((z + q.q32.eval(x[j])) * z + q.q31.eval(x[j])) * z + q.q30.eval(x[j])) / (sum * sum * sum);
    c.diagnostics["Q2_" + tag] = q2;
    c.diagnostics["Q3_" + tag] = q3;
    c.diagnostics["z_" + tag] = z;
    if (std::abs(q2) > tol || std::abs(q3) > tol) continue;
    if (!(z > x[j])) continue;
    c.components.push_back(detail::make_component(x[j], z, tol));
  }
  detail::sort_components(c.components);
  if (c.components.empty()) {
    c.kind = Kind::non_elliptic;
    return c;
  }
  const double gap = boundary_gap(p, c.components.front());
  c.diagnostics["boundary_gap"] = gap;
  auto three = three_ellipses6(p, tol);
  c.diagnostics["three_ellipses"] = three.kind == Kind::all_components_elliptic ? 1.0 : 0.0;
  if (three.kind == Kind::all_components_elliptic) {
    c.kind = Kind::all_components_elliptic;
    c.components = three.components;
  } else {
    c.kind = gap <= 1e-7 ? Kind::boundary_ellipse_only : Kind::inner_ellipse_only;
  }
  return c;
}

/// All A_j equal to A0: components sigma_j E with sigma_j = cos(j pi/(n+1)),
/// i.e. x_j = 2 sigma_j^2 and z_j = A0 x_j (foci +-2 sigma_j, semi-axes
/// sigma_j sqrt(2(A0 +- 1))). For odd n the last component is the origin.
inline Classification toeplitz_components(const ReciprocalParams& p, double tol = kDefaultTol) {
  if (!p.all_equal(tol)) throw Error(ErrorCode::not_toeplitz_case, "parameters are not all equal");
  const auto v = p.values();
  const double a0 = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  const std::size_t n = p.n();
  Classification c;
  c.kind = Kind::toeplitz_case;
  c.origin_component = n % 2 == 1;
  c.diagnostics["A0"] = a0;
  const std::size_t count = (n + 1) / 2;
  for (std::size_t j = 1; j <= count; ++j) {
    if (n % 2 == 1 && j == count) {
      c.components.push_back({0.0, 0.0, true});
      continue;
    }
    const double sigma = std::cos(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n + 1));
    const double x = 2.0 * sigma * sigma;
    c.components.push_back(detail::make_component(x, a0 * x, tol));
  }
  return c;
}

inline Classification classify6(const ReciprocalParams& p, double tol = kDefaultTol) {
  return contains_ellipse6(p, tol);
}

/// Dispatch on size; all-equal parameters of any size go to toeplitz_components.
inline Classification classify(const ReciprocalParams& p, double tol = kDefaultTol) {
  if (detail::normal_params(p, tol)) return detail::normal_result(p);
  switch (p.n()) {
    case 3: return classify3(p, tol);
    case 4: return classify4(p, tol);
    case 5: return classify5(p, tol);
    case 6: return classify6(p, tol);
    default: break;
  }
  if (p.all_equal(tol)) return toeplitz_components(p, tol);
  throw Error(ErrorCode::wrong_size, "no classifier for n = " + std::to_string(p.n()) + " (supported: 3..6)");
}

}  // namespace kipp
