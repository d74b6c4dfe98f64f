#include "catch_amalgamated.hpp"

#include "kipp/classify.hpp"
#include "support.hpp"

#include <numbers>

using namespace kipp;
using Catch::Approx;

namespace {

constexpr double kPhi = std::numbers::phi;

ReciprocalParams params(std::vector<double> a) { return ReciprocalParams(std::move(a)); }

// Exact three-ellipse point with A1 = 20, A5 = 40 (Newton on the tel system
// in extended precision, independent of the library).
const std::vector<double> kThreeEllipse{20.0, 64.9395920743493, 36.0387547160968, 28.9008373582526, 40.0};

// A1 = A5 = u A3, A2 = A4 = v A3 on the single-ellipse line at x3, A3 = 5.
std::vector<double> single_ellipse_point(double v, double a3 = 5.0) {
  const double x3 = cubic_roots()[2];
  const double u = 2 * x3 - (2 * x3 - 1) * v;
  return {u * a3, v * a3, a3, v * a3, u * a3};
}

void check_factors_divide(const ReciprocalParams& p, const Classification& c) {
  auto g = generating_poly_double(p);
  for (const auto& comp : c.components) {
    auto d = divide_by_linear(g.p, comp.x, comp.z);
    for (double v : d.remainder.coefficients()) CHECK(std::abs(v) <= 1e-9 * std::pow(detail::param_scale(p), 3));
  }
}

}  // namespace

TEST_CASE("classify3") {
  auto n = classify3(params({1, 1}));
  CHECK(n.kind == Kind::normal);
  CHECK(n.components.empty());
  CHECK(n.diagnostics.at("spectrum_endpoint") == Approx(std::sqrt(2.0)).epsilon(1e-15));

  auto c = classify3(params({2, 2}));
  CHECK(c.kind == Kind::all_components_elliptic);
  CHECK(c.origin_component);
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].semi_u() == Approx(std::sqrt(3.0)));
  CHECK(c.components[0].semi_v() == Approx(1.0));

  auto d = classify3(params({1, 3}));
  CHECK(d.components[0].x == 1.0);
  CHECK(d.components[0].z == 2.0);
  check_factors_divide(params({1, 3}), d);

  CHECK_THROWS_AS(classify3(params({1, 2, 3})), Error);
}

TEST_CASE("classify4: golden-ratio planes") {
  const double a2 = 2 * kPhi - 1 / kPhi;
  auto p = params({2, a2, 1});
  auto c = classify4(p);
  CHECK(c.kind == Kind::all_components_elliptic);
  CHECK(c.diagnostics.at("cons_lhs") == Approx(4.854101966249685).epsilon(1e-13));
  CHECK(c.diagnostics.at("cons_rhs") == Approx(4.854101966249685).epsilon(1e-13));
  CHECK(std::abs(c.diagnostics.at("cons_residual")) <= 1e-10);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].x == Approx((3 + std::sqrt(5.0)) / 4));
  CHECK(c.components[0].z == Approx(kPhi + 1).epsilon(1e-14));
  CHECK(c.components[1].x == Approx((3 - std::sqrt(5.0)) / 4));
  CHECK(components_nested(c.components));
  check_factors_divide(p, c);

  auto bad = classify4(params({2, a2 + 1e-3, 1}));
  CHECK(bad.kind == Kind::non_elliptic);

  CHECK(classify4(params({1, 1, 1})).kind == Kind::normal);
  for (double a0 : {1.5, 3.0, 17.0}) CHECK(classify4(params({a0, a0, a0})).kind == Kind::all_components_elliptic);

  // Second plane, mirrored.
  auto m = classify4(params({1, a2, 2}));
  CHECK(m.kind == Kind::all_components_elliptic);
  CHECK(m.diagnostics.at("branch") == 2.0);
}

TEST_CASE("classify4: bisector planes carry only the all-equal ray") {
  for (int trial = 0; trial < 500; ++trial) {
    const double s = test::uniform(1, 10);
    double t = test::uniform(1, 10);
    if (std::abs(s - t) < 1e-3) t += 0.5;
    std::vector<double> a;
    switch (trial % 3) {
      case 0: a = {s, s, t}; break;
      case 1: a = {s, t, s}; break;
      default: a = {t, s, s}; break;
    }
    CHECK(classify4(params(a)).kind == Kind::non_elliptic);
  }
}

TEST_CASE("classify5") {
  const std::vector<double> b{1.5, 2, 2.5, 1.5};
  auto p = a_params(build_reciprocal(std::span<const double>(b)));
  auto c = classify5(p);
  CHECK(c.kind == Kind::all_components_elliptic);
  CHECK(c.origin_component);
  CHECK(c.diagnostics.at("branch") == 1.0);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].x == 1.5);
  CHECK(2 * c.components[0].z == Approx(6.67722).margin(1e-5));
  CHECK(2 * c.components[1].z == Approx(1.34722).margin(1e-5));
  CHECK(c.diagnostics.at("D") == Approx(c.diagnostics.at("A2_plus_A3")).epsilon(1e-12));
  CHECK(components_nested(c.components));
  check_factors_divide(p, c);

  const std::vector<double> bn{1.5, 2, 2, 3};
  auto pn = a_params(build_reciprocal(std::span<const double>(bn)));
  CHECK(pn[0] - pn[3] == Approx(-3.2).margin(0.05));
  CHECK(classify5(pn).kind == Kind::non_elliptic);

  auto low = classify5(params({5, 1, 2, 3}));
  CHECK(low.kind == Kind::all_components_elliptic);
  CHECK(low.diagnostics.at("branch") == 2.0);
  CHECK(low.components[0].z == 3.5);
  CHECK(low.components[1].z == 2.0);
  check_factors_divide(params({5, 1, 2, 3}), low);

  // First branch, inner factor z = A1/2 with x = 1/2: a doubleton when A1 = 1.
  auto deg = classify5(params({1, 3, 2, 1}));
  CHECK(deg.components[1].degenerate);
}

TEST_CASE("classify5 matches toeplitz_components on the all-equal ray") {
  auto c = classify5(params({2, 2, 2, 2}));
  auto t = toeplitz_components(params({2, 2, 2, 2}));
  REQUIRE(t.components.size() == 3);
  CHECK(t.components[2].x == 0.0);
  CHECK(t.components[2].degenerate);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(c.components[j].x == Approx(t.components[j].x).epsilon(1e-14));
    CHECK(c.components[j].z == Approx(t.components[j].z).epsilon(1e-14));
  }
}

TEST_CASE("toeplitz_components") {
  auto t = toeplitz_components(params(std::vector<double>(5, 1.0)));
  REQUIRE(t.components.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const double sigma = std::cos((j + 1) * std::numbers::pi / 7);
    CHECK(t.components[j].degenerate);
    CHECK(t.components[j].focal() == Approx(2 * sigma).epsilon(1e-14));
    CHECK(t.components[j].semi_u() == Approx(2 * sigma).epsilon(1e-14));
  }
  auto roots = cubic_roots();
  auto t2 = toeplitz_components(params(std::vector<double>(5, 2.0)));
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(t2.components[j].x - roots[2 - j]) <= 1e-12);
  for (std::size_t j = 0; j < 3; ++j) {
    const double sigma = std::cos((j + 1) * std::numbers::pi / 7);
    CHECK(t2.components[j].semi_u() == Approx(sigma * std::sqrt(2 * 3.0)));
    CHECK(t2.components[j].semi_v() == Approx(sigma * std::sqrt(2 * 1.0)));
  }
  CHECK_THROWS_AS(toeplitz_components(params({1, 2})), Error);
}

TEST_CASE("x values are 2 cos^2(j pi/(n+1))") {
  auto check = [](const Classification& c, std::size_t n) {
    for (std::size_t j = 0; j < c.components.size(); ++j) {
      const double s = std::cos((j + 1) * std::numbers::pi / (n + 1));
      CHECK(std::abs(c.components[j].x - 2 * s * s) <= 1e-10);
    }
  };
  check(classify3(params({2, 5})), 3);
  check(classify4(params({2, 2 * kPhi - 1 / kPhi, 1})), 4);
  check(classify5(params({5, 1, 2, 3})), 5);
  check(three_ellipses6(params(kThreeEllipse), 1e-8), 6);
}

TEST_CASE("ellipse_centers_z") {
  auto x = cubic_roots();
  for (double a0 : {1.0, 2.0, 7.5}) {
    auto z = ellipse_centers_z(params(std::vector<double>(5, a0)));
    for (std::size_t j = 0; j < 3; ++j) CHECK(z[j] == Approx(a0 * x[j]).epsilon(1e-12));
  }
  auto z = ellipse_centers_z(params(kThreeEllipse));
  // Direct 3x3 solve in 30-digit arithmetic.
  CHECK(z[0] == Approx(1.98062264195162094).epsilon(1e-12));
  CHECK(z[1] == Approx(28.0193773580483776).epsilon(1e-12));
  CHECK(z[2] == Approx(64.9395920743493515).epsilon(1e-12));
  for (std::size_t j = 0; j < 3; ++j) CHECK(z[j] > x[j]);

  // Lagrange form against the R(x) form, implemented and as printed.
  auto a = test::random_params(5, 9.0);
  auto zl = ellipse_centers_z(params(a));
  auto zr = centers_from_r(center_poly<double>(a));
  auto zt = centers_from_r(center_poly_transcribed<double>(a));
  for (std::size_t j = 0; j < 3; ++j) CHECK(zl[j] == Approx(zr[j]).epsilon(1e-12));
  CHECK(std::abs(zl[2] - zt[2]) > 1e-3);
}

TEST_CASE("three_ellipses6") {
  auto c = three_ellipses6(params(kThreeEllipse));
  CHECK(c.kind == Kind::all_components_elliptic);
  REQUIRE(c.components.size() == 3);
  CHECK(c.diagnostics.at("nested") == 1.0);
  check_factors_divide(params(kThreeEllipse), c);
  for (const auto& comp : c.components) CHECK_FALSE(comp.degenerate);

  std::vector<double> half;
  for (double v : kThreeEllipse) half.push_back(v / 2);
  CHECK(three_ellipses6(params(half)).kind == Kind::all_components_elliptic);

  CHECK(three_ellipses6(params({2, 2, 2, 2, 2})).kind == Kind::all_components_elliptic);
  CHECK(three_ellipses6(params({1, 1, 1, 1, 1})).kind == Kind::normal);
  CHECK(three_ellipses6(params({1, 2, 3, 4, 5})).kind == Kind::non_elliptic);
}

TEST_CASE("three_ellipses6 rigidity on A2 = A4 and A1 = A5") {
  int accepted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto a = test::random_params(5, 20.0);
    if (trial % 2 == 0) a[3] = a[1];
    else a[4] = a[0];
    accepted += three_ellipses6(params(a)).kind != Kind::non_elliptic;
  }
  CHECK(accepted == 0);
}

TEST_CASE("contains_ellipse6") {
  SECTION("single ellipse on the slice line") {
    for (double v : {0.6562336702811362, 0.8}) {
      auto a = single_ellipse_point(v);
      auto c = contains_ellipse6(params(a));
      INFO("v = " << v);
      CHECK(c.kind == Kind::boundary_ellipse_only);
      REQUIRE(c.components.size() == 1);
      CHECK(std::abs(c.components[0].x - cubic_roots()[2]) < 1e-15);
      CHECK(c.components[0].z == Approx(5 * cubic_roots()[2]).epsilon(1e-12));
      CHECK(three_ellipses6(params(a)).kind == Kind::non_elliptic);
      check_factors_divide(params(a), c);
    }
  }
  SECTION("all-equal: every root is common") {
    auto c = contains_ellipse6(params({2, 2, 2, 2, 2}));
    CHECK(c.kind == Kind::all_components_elliptic);
    CHECK(c.components.size() == 3);
    for (int j = 1; j <= 3; ++j) CHECK(std::abs(c.diagnostics.at("R1_x" + std::to_string(j))) < 1e-12);
  }
  SECTION("generic parameters") {
    auto c = contains_ellipse6(params({2, 3, 4, 5, 6}));
    CHECK(c.kind == Kind::non_elliptic);
    CHECK(c.components.empty());
    // 37.952.../400, frozen from an independent evaluation.
    CHECK(c.diagnostics.at("R1_x1") == Approx(37.952129011676806 / 400).epsilon(1e-12));
  }
  SECTION("the literal figure parameters are off the manifold") {
    auto c = contains_ellipse6(params({3.28117, 6.5623367, 5, 6.5623367, 3.28117}));
    CHECK(c.kind == Kind::non_elliptic);
  }
}

TEST_CASE("classify dispatcher") {
  CHECK(classify(params({1, 1, 1, 1, 1, 1, 1})).kind == Kind::normal);
  CHECK(classify(params(std::vector<double>(7, 3.0))).kind == Kind::toeplitz_case);
  try {
    classify(params({1, 2, 3, 4, 5, 6}));
    FAIL("expected WrongSize");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::wrong_size);
  }
  CHECK(classify(params({5, 1, 2, 3})).kind == Kind::all_components_elliptic);
}
