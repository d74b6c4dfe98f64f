#include "catch_amalgamated.hpp"

#include "kipp/classify.hpp"
#include "kipp/curve.hpp"
#include "support.hpp"

#include <numbers>

using namespace kipp;
using Catch::Approx;

namespace {

TridiagonalMatrix from_b(std::vector<double> b) { return build_reciprocal(std::span<const double>(b)); }

double pencil_max(const TridiagonalMatrix& m, double theta) { return eig_all(realified_pencil(m, theta)).values.back(); }

std::vector<CurveSample> synthetic_ellipse(double p, double q, std::size_t count) {
  std::vector<CurveSample> s;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    s.push_back({t, 0, p * std::cos(t), q * std::sin(t), 0.0});
  }
  return s;
}

}  // namespace

TEST_CASE("2x2 hermitian gives the segment [-1, 1]") {
  TridiagonalMatrix m(Complex{}, {Complex(1)}, {Complex(1)});
  const auto s = sample_curve(m, 64);
  REQUIRE(s.size() == 128);
  for (const auto& p : s) {
    CHECK(std::abs(p.v) <= 1e-14);
    CHECK(std::abs(p.u) <= 1.0 + 1e-14);
  }
  CHECK_THROWS_AS(fit_ellipse_axis_aligned(branch_samples(s, 0)), Error);
}

TEST_CASE("grid below 8 is rejected") {
  CHECK_THROWS_AS(sample_curve(from_b({2.0}), 7), Error);
}

TEST_CASE("samples lie on their tangent lines") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<double> b(n - 1);
    for (auto& v : b) v = test::uniform(0.3, 3.0);
    const auto m = from_b(b);
    const auto s = sample_curve(m, 90);
    double worst = 0.0;
    for (const auto& p : s) worst = std::max(worst, std::abs(p.u * std::cos(p.theta) - p.v * std::sin(p.theta) - p.lambda));
    CHECK(worst <= 1e-8);
    // ordering and support
    for (std::size_t k = 0; k < 90; ++k) {
      const auto& first = s[k * n];
      CHECK(first.branch == 0);
      CHECK(first.lambda == Approx(pencil_max(m, first.theta)).margin(1e-9));
      double best = -1e300;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& p = s[k * n + j];
        CHECK(p.theta == first.theta);
        CHECK(p.branch == j);
        if (j > 0) CHECK(p.lambda <= s[k * n + j - 1].lambda);
        best = std::max(best, p.u * std::cos(p.theta) - p.v * std::sin(p.theta));
      }
      CHECK(std::abs(best - pencil_max(m, first.theta)) <= 1e-9);
    }
  }
}

TEST_CASE("5x5 elliptic example: branches match the classifier") {
  const std::vector<double> b{1.5, 2, 2.5, 1.5};
  const auto m = from_b(b);
  const auto c = classify5(a_params(m));
  REQUIRE(c.kind == Kind::all_components_elliptic);
  REQUIRE(c.components.size() == 2);
  const auto s = sample_curve(m);
  const auto outer = fit_ellipse_axis_aligned(branch_samples(s, 0));
  CHECK(outer.semi_u == Approx(std::sqrt((6.67722 + 3) / 2)).epsilon(1e-6));
  CHECK(outer.semi_v == Approx(std::sqrt((6.67722 - 3) / 2)).epsilon(1e-5));
  for (std::size_t br = 0; br < 2; ++br) {
    for (std::size_t mirror : {br, 4 - br}) {
      const auto f = fit_ellipse_axis_aligned(branch_samples(s, mirror));
      CHECK(f.max_radial_deviation <= 1e-7);
      CHECK(f.rms_residual <= 1e-7);
      CHECK(f.semi_u == Approx(c.components[br].semi_u()).epsilon(1e-6));
      CHECK(f.semi_v == Approx(c.components[br].semi_v()).epsilon(1e-6));
      CHECK(f.semi_major >= f.semi_minor);
    }
  }
  CHECK_THROWS_AS(fit_ellipse_axis_aligned(branch_samples(s, 2)), Error);

  const auto fine = sample_curve(m, 1440);
  const auto outer_fine = fit_ellipse_axis_aligned(branch_samples(fine, 0));
  CHECK(std::abs(outer_fine.semi_u - outer.semi_u) < 1e-8);
  CHECK(std::abs(outer_fine.semi_v - outer.semi_v) < 1e-8);
}

TEST_CASE("5x5 non-elliptic example deviates and is grid stable") {
  const auto m = from_b({1.5, 2, 2, 3});
  CHECK(classify5(a_params(m)).kind == Kind::non_elliptic);
  const auto coarse = sample_curve(m, 720);
  const auto fine = sample_curve(m, 1440);
  for (std::size_t br : {0, 1}) {
    const auto f1 = fit_ellipse_axis_aligned(branch_samples(coarse, br));
    const auto f2 = fit_ellipse_axis_aligned(branch_samples(fine, br));
    const double d1 = deviation_metric(branch_samples(coarse, br), f1);
    const double d2 = deviation_metric(branch_samples(fine, br), f2);
    CHECK(d1 > 1e-4);
    CHECK(std::abs(d2 - d1) <= 0.1 * d1);
  }
}

TEST_CASE("single-ellipse 6x6: only the outer component is an ellipse") {
  const double x3 = cubic_roots()[2];
  const double v = 0.6562336702811362, u = 2 * x3 - (2 * x3 - 1) * v;
  const ReciprocalParams p({5 * u, 5 * v, 5, 5 * v, 5 * u});
  const auto s = sample_curve(params_to_matrix(p));
  const auto outer = fit_ellipse_axis_aligned(branch_samples(s, 0));
  CHECK(outer.max_radial_deviation <= 1e-6);
  CHECK(outer.semi_u == Approx(std::sqrt(6 * x3)).epsilon(1e-9));
  CHECK(outer.semi_v == Approx(std::sqrt(4 * x3)).epsilon(1e-9));
  for (std::size_t br : {1, 2}) CHECK(fit_ellipse_axis_aligned(branch_samples(s, br)).max_radial_deviation > 1e-5);
}

TEST_CASE("all-equal parameters: branches are the closed-form ellipses") {
  for (double a0 : {1.0, 1.5, 3.0}) {
    for (std::size_t n = 3; n <= 8; ++n) {
      const ReciprocalParams p(std::vector<double>(n - 1, a0));
      const auto c = toeplitz_components(p);
      const auto s = sample_curve(params_to_matrix(p));
      for (std::size_t k = 0; k < c.components.size(); ++k) {
        const auto& comp = c.components[k];
        if (comp.degenerate) continue;
        const auto f = fit_ellipse_axis_aligned(branch_samples(s, k));
        CHECK(f.semi_u == Approx(comp.semi_u()).epsilon(1e-6));
        CHECK(f.semi_v == Approx(comp.semi_v()).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("exact ellipse fit") {
  const auto s = synthetic_ellipse(2.0, 1.0, 200);
  const auto f = fit_ellipse_axis_aligned(s);
  CHECK(f.semi_u == Approx(2.0).epsilon(1e-12));
  CHECK(f.semi_v == Approx(1.0).epsilon(1e-12));
  CHECK(f.semi_major == Approx(2.0).epsilon(1e-12));
  CHECK(f.semi_minor == Approx(1.0).epsilon(1e-12));
  CHECK(f.rms_residual <= 1e-10);
  CHECK(deviation_metric(s, f) <= 1e-10);
  CHECK(radial_deviation(s, 2.0, 1.1) > 0.05);
  CHECK_THROWS_AS(fit_ellipse_axis_aligned(synthetic_ellipse(2.0, 1.0, 7)), Error);
}

TEST_CASE("reciprocal curves are symmetric about both axes") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<Complex> b(n - 1);
    for (auto& v : b) v = std::polar(test::uniform(0.3, 3.0), test::uniform(0.0, 2 * std::numbers::pi));
    const auto s = sample_curve(build_reciprocal(std::span<const Complex>(b)), 360);
    const double diam = sample_diameter(s);
    CHECK(symmetry_residual(s) <= 1e-8 * diam);
    CHECK(central_symmetry_residual(s) <= 1e-8 * diam);
  }
  CHECK(symmetry_residual({}) == 0.0);
  CHECK(central_symmetry_residual({}) == 0.0);
}

TEST_CASE("non-reciprocal tridiagonal keeps only central symmetry") {
  TridiagonalMatrix m(Complex{}, {Complex(1), Complex(2)}, {Complex(1), Complex(1)});
  const auto s = sample_curve(m, 360);
  const double diam = sample_diameter(s);
  CHECK(central_symmetry_residual(s) <= 1e-8 * diam);
  const double r = symmetry_residual(s);
  CHECK(r >= 0.0);
  CHECK(std::isfinite(r));
}
