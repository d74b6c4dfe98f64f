#pragma once

// Sampling of Kippenhahn curves: for each angle theta and each eigenpair
// (lambda, x) of Re(e^{i theta} M), the point <Mx, x> lies on the curve and on
// the tangent line u cos(theta) - v sin(theta) = lambda.

#include "kipp/eigsolve.hpp"
#include "kipp/error.hpp"
#include "kipp/trimat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <vector>

namespace kipp {

inline constexpr std::size_t kDefaultGrid = 720;

struct CurveSample {
  double theta = 0.0;
  std::size_t branch = 0;  // 0 = largest eigenvalue
  double u = 0.0;
  double v = 0.0;
  double lambda = 0.0;
};

struct FitResult {
  double semi_u = 0.0;  // along the real axis
  double semi_v = 0.0;  // along the imaginary axis
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double rms_residual = 0.0;
  double max_radial_deviation = 0.0;
};

/// Samples on theta_k = 2 pi k / m, ordered by theta then branch.
inline std::vector<CurveSample> sample_curve(const TridiagonalMatrix& m, std::size_t grid = kDefaultGrid) {
  if (grid < 8) throw Error(ErrorCode::invalid_param, "grid size must be at least 8");
  const std::size_t n = m.size();
  std::vector<CurveSample> out;
  out.reserve(grid * n);
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
    const auto rp = realified_pencil_with_phases(m, theta);
    const auto s = eig_full(rp.t);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t idx = n - 1 - b;
      const auto& y = s.vectors[idx];
      for (std::size_t i = 0; i < n; ++i) x[i] = rp.phases[i] * y[i];
      const auto mx = m.apply(x);
      Complex w{};
      for (std::size_t i = 0; i < n; ++i) w += std::conj(x[i]) * mx[i];
      out.push_back({theta, b, w.real(), w.imag(), s.values[idx]});
    }
  }
  return out;
}

inline std::vector<CurveSample> branch_samples(const std::vector<CurveSample>& samples, std::size_t branch) {
  std::vector<CurveSample> out;
  for (const auto& s : samples)
    if (s.branch == branch) out.push_back(s);
  return out;
}

namespace detail {

inline double ellipse_radius(double alpha, double beta, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return 1.0 / std::sqrt(alpha * c * c + beta * s * s);
}

}  // namespace detail

/// Max over samples of | |w| - r_E(arg w) | for the origin-centred ellipse
/// u^2/a^2 + v^2/b^2 = 1.
inline double radial_deviation(const std::vector<CurveSample>& samples, double semi_u, double semi_v) {
  const double alpha = 1.0 / (semi_u * semi_u), beta = 1.0 / (semi_v * semi_v);
  double worst = 0.0;
  for (const auto& s : samples) {
    const double r = std::hypot(s.u, s.v);
    const double phi = std::atan2(s.v, s.u);
    worst = std::max(worst, std::abs(r - detail::ellipse_radius(alpha, beta, phi)));
  }
  return worst;
}

/// Least squares for alpha u^2 + beta v^2 = 1 (linear in alpha, beta).
inline FitResult fit_ellipse_axis_aligned(const std::vector<CurveSample>& samples) {
  if (samples.size() < 8) throw Error(ErrorCode::degenerate_branch, "need at least 8 samples");
  double umax = 0.0, vmax = 0.0;
  for (const auto& s : samples) {
    umax = std::max(umax, std::abs(s.u));
    vmax = std::max(vmax, std::abs(s.v));
  }
  if (umax <= 1e-10 || vmax <= 1e-10)
    throw Error(ErrorCode::degenerate_branch, "branch is a segment or a point");
  double s40 = 0, s22 = 0, s04 = 0, s20 = 0, s02 = 0;
  for (const auto& s : samples) {
    const double u2 = s.u * s.u, v2 = s.v * s.v;
    s40 += u2 * u2;
    s22 += u2 * v2;
    s04 += v2 * v2;
    s20 += u2;
    s02 += v2;
  }
  const double det = s40 * s04 - s22 * s22;
  if (!(std::abs(det) > 0.0)) throw Error(ErrorCode::degenerate_branch, "singular normal equations");
  const double alpha = (s20 * s04 - s02 * s22) / det;
  const double beta = (s40 * s02 - s22 * s20) / det;
  if (!(alpha > 0.0) || !(beta > 0.0)) throw Error(ErrorCode::degenerate_branch, "fit is not an ellipse");

  FitResult f;
  f.semi_u = 1.0 / std::sqrt(alpha);
  f.semi_v = 1.0 / std::sqrt(beta);
  f.semi_major = std::max(f.semi_u, f.semi_v);
  f.semi_minor = std::min(f.semi_u, f.semi_v);
  double ss = 0.0;
  for (const auto& s : samples) {
    const double r = alpha * s.u * s.u + beta * s.v * s.v - 1.0;
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / static_cast<double>(samples.size()));
  f.max_radial_deviation = radial_deviation(samples, f.semi_u, f.semi_v);
  return f;
}

inline double deviation_metric(const std::vector<CurveSample>& samples, const FitResult& fit) {
  return radial_deviation(samples, fit.semi_u, fit.semi_v);
}

/// Largest distance between any two samples.
inline double sample_diameter(const std::vector<CurveSample>& samples) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double du = samples[i].u - samples[j].u, dv = samples[i].v - samples[j].v;
      d2 = std::max(d2, du * du + dv * dv);
    }
  return std::sqrt(d2);
}

namespace detail {

// Directed Hausdorff distance from reflected(S) to S.
inline double reflected_distance(const std::vector<CurveSample>& s, double su, double sv) {
  double worst = 0.0;
  for (const auto& a : s) {
    const double ru = su * a.u, rv = sv * a.v;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : s) {
      const double du = ru - b.u, dv = rv - b.v;
      best = std::min(best, du * du + dv * dv);
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace detail

/// Hausdorff distance between the sample set and its mirror images in both
/// coordinate axes (the larger of the two). Since reflection is an isometry
/// the directed distance in one direction equals the other.
inline double symmetry_residual(const std::vector<CurveSample>& samples) {
  if (samples.empty()) return 0.0;
  return std::max(detail::reflected_distance(samples, 1.0, -1.0), detail::reflected_distance(samples, -1.0, 1.0));
}

/// Hausdorff distance between the sample set and its image under w -> -w.
inline double central_symmetry_residual(const std::vector<CurveSample>& samples) {
  if (samples.empty()) return 0.0;
  return detail::reflected_distance(samples, -1.0, -1.0);
}

}  // namespace kipp
