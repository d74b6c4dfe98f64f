#include "catch_amalgamated.hpp"

#include "kipp/eigsolve.hpp"
#include "kipp/trimat.hpp"
#include "support.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>

using namespace kipp;
using Catch::Approx;

namespace {

std::vector<double> dense_pencil_eigs(const TridiagonalMatrix& m, double theta) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::MatrixXcd h = std::polar(1.0, theta) * a;
  Eigen::MatrixXcd re = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(re, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

TridiagonalMatrix random_reciprocal(std::size_t n) {
  std::vector<Complex> b(n - 1);
  for (auto& v : b) v = std::polar(test::uniform(0.3, 3.0), test::uniform(-3.1, 3.1));
  return build_reciprocal(std::span<const Complex>(b));
}

}  // namespace

TEST_CASE("build_reciprocal") {
  const std::vector<double> one{1.0};
  auto m = build_reciprocal(std::span<const double>(one));
  CHECK(m.size() == 2);
  CHECK(m(0, 1) == Complex(1));
  CHECK(m(1, 0) == Complex(1));
  CHECK(m(0, 0) == Complex(0));
  CHECK(m.is_reciprocal());

  const std::vector<double> b{1.5, 2, 2.5, 1.5};
  auto m5 = build_reciprocal(std::span<const double>(b));
  CHECK(m5.size() == 5);
  const double want[4] = {2.0 / 3, 0.5, 0.4, 2.0 / 3};
  for (std::size_t j = 0; j < 4; ++j) CHECK(m5.sub()[j].real() == Approx(want[j]).epsilon(1e-15));

  const std::vector<double> bad{0.0, 1.0};
  try {
    build_reciprocal(std::span<const double>(bad));
    FAIL("expected ZeroSuperdiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::zero_superdiagonal);
  }
}

TEST_CASE("a_params") {
  const std::vector<double> b{1.5, 2, 2.5, 1.5};
  auto p = a_params(build_reciprocal(std::span<const double>(b)));
  CHECK(p.n() == 5);
  CHECK(p[0] == Approx(1.3472222222222222).epsilon(1e-14));
  CHECK(p[1] == Approx(2.125).epsilon(1e-15));
  CHECK(p[2] == Approx(3.205).epsilon(1e-15));
  CHECK(p[3] == Approx(1.3472222222222222).epsilon(1e-14));

  const std::vector<double> ones{1, 1, 1};
  CHECK(a_params(build_reciprocal(std::span<const double>(ones))).values()[2] == 1.0);

  const std::vector<Complex> rot{std::polar(2.0, std::numbers::pi / 3)};
  CHECK(a_params(build_reciprocal(std::span<const Complex>(rot)))[0] == Approx(2.125).epsilon(1e-14));

  TridiagonalMatrix general(Complex(0), {Complex(1), Complex(2)}, {Complex(1), Complex(1)});
  CHECK_FALSE(general.is_reciprocal());
  CHECK_THROWS_AS(a_params(general), Error);
}

TEST_CASE("params_to_matrix") {
  auto m = params_to_matrix(ReciprocalParams({1.0, 1.0}));
  CHECK(m.super()[0] == Complex(1));
  CHECK(m.super()[1] == Complex(1));
  CHECK(params_to_matrix(ReciprocalParams({2.125})).super()[0].real() == Approx(2.0).epsilon(1e-15));
  try {
    ReciprocalParams bad({0.5});
    FAIL("expected InvalidParam");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_param);
  }
  for (int trial = 0; trial < 200; ++trial) {
    ReciprocalParams p(test::random_params(1 + trial % 7, 50.0));
    auto back = a_params(params_to_matrix(p));
    for (std::size_t j = 0; j < p.values().size(); ++j)
      CHECK(std::abs(back[j] - p[j]) <= 1e-12 * std::max(1.0, p[j]));
  }
}

TEST_CASE("realified_pencil off-diagonal from the parameters") {
  auto m = random_reciprocal(6);
  auto p = a_params(m);
  for (double theta : {0.0, 0.3, 1.2, 2.9, 4.4}) {
    auto t = realified_pencil(m, theta);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(t.d[j] == 0.0);
      CHECK(t.e[j] * t.e[j] == Approx((p[j] + std::cos(2 * theta)) / 2).epsilon(1e-12));
    }
  }
  const std::vector<double> one{1.0};
  auto t = realified_pencil(build_reciprocal(std::span<const double>(one)), std::numbers::pi / 2);
  CHECK(t.e[0] < 1e-16);
}

TEST_CASE("realified_pencil phases give the unitary similarity") {
  TridiagonalMatrix m(Complex(0.3, -0.2), {Complex(1, 2), Complex(-0.5, 0.1), Complex(0, 3)},
                      {Complex(2, -1), Complex(0.7, 0.7), Complex(-1, 0)});
  const double theta = 0.7;
  auto rp = realified_pencil_with_phases(m, theta);
  const std::size_t n = m.size();
  const Complex rot = std::polar(1.0, theta);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex h = (rot * m(i, j) + std::conj(rot * m(j, i))) / 2.0;
      double tij = 0.0;
      if (i == j) tij = rp.t.d[i];
      if (j == i + 1) tij = rp.t.e[i];
      if (i == j + 1) tij = rp.t.e[j];
      const Complex dtd = rp.phases[i] * tij * std::conj(rp.phases[j]);
      CHECK(std::abs(dtd - h) < 1e-14);
    }
  }
}

TEST_CASE("realified_pencil matches a dense hermitian solver") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    std::vector<Complex> b(n - 1), c(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      b[j] = Complex(test::uniform(-2, 2), test::uniform(-2, 2));
      c[j] = Complex(test::uniform(-2, 2), test::uniform(-2, 2));
    }
    TridiagonalMatrix m(Complex(test::uniform(-1, 1), test::uniform(-1, 1)), b, c);
    const double theta = trial == 0 ? 0.7 : test::uniform(0, 2 * std::numbers::pi);
    auto ours = eig_all(realified_pencil(m, theta)).values;
    auto want = dense_pencil_eigs(m, theta);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(ours[k] - want[k]) <= 1e-9);
  }
}

TEST_CASE("pencil spectrum: theta -> -theta and lambda -> -lambda symmetries") {
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_reciprocal(2 + static_cast<std::size_t>(trial % 7));
    const double theta = test::uniform(0, 2 * std::numbers::pi);
    auto s1 = eig_all(realified_pencil(m, theta)).values;
    auto s2 = eig_all(realified_pencil(m, -theta)).values;
    const std::size_t n = s1.size();
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(s1[k] - s2[k]) <= 1e-10);
      CHECK(std::abs(s1[k] + s1[n - 1 - k]) <= 1e-10);
    }
  }
}

TEST_CASE("normal reciprocal matrices") {
  CHECK(is_normal_reciprocal(ReciprocalParams({1, 1, 1, 1})));
  CHECK_FALSE(is_normal_reciprocal(ReciprocalParams({1, 1, 2})));
  for (std::size_t n = 2; n <= 8; ++n) {
    auto m = params_to_matrix(ReciprocalParams(std::vector<double>(n - 1, 1.0)));
    auto s = eig_all(realified_pencil(m, 0.0)).values;
    auto want = hermitian_toeplitz_spectrum(n);
    std::sort(want.begin(), want.end());
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(s[k] - want[k]) <= 1e-12);
  }
}
