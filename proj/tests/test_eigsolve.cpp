#include "catch_amalgamated.hpp"

#include "kipp/eigsolve.hpp"
#include "support.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <numeric>

using namespace kipp;
using Catch::Approx;

namespace {

SymTridiagonal random_sym(std::size_t n, double zero_prob = 0.0) {
  SymTridiagonal t;
  t.d.resize(n);
  t.e.resize(n - 1);
  for (auto& v : t.d) v = test::uniform(-3, 3);
  for (auto& v : t.e) v = test::uniform(0, 0.999) < zero_prob ? 0.0 : test::uniform(0.01, 2);
  return t;
}

std::vector<double> dense_eigs(const SymTridiagonal& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = t.d[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.e[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

// det(T - x I) by the three-term recursion; roots bracketed on a fine grid.
double char_poly(const SymTridiagonal& t, double x) {
  double prev = 1.0, cur = t.d[0] - x;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double next = (t.d[j] - x) * cur - t.e[j - 1] * t.e[j - 1] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> char_poly_roots(const SymTridiagonal& t) {
  const double r = t.inf_norm() + 1.0;
  const int grid = 200000;
  std::vector<double> roots;
  double x0 = -r, f0 = char_poly(t, x0);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = -r + 2 * r * i / grid;
    const double f1 = char_poly(t, x1);
    if ((f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((char_poly(t, mid) < 0) == (f0 < 0)) lo = mid;
        else hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

TEST_CASE("trivial spectra") {
  SymTridiagonal z{{0, 0, 0, 0}, {0, 0, 0}};
  auto s = eig_all(z);
  REQUIRE(s.values.size() == 4);
  for (double v : s.values) CHECK(v == 0.0);

  SymTridiagonal path{std::vector<double>(5, 0.0), std::vector<double>(4, 1.0)};
  auto sp = eig_all(path).values;
  for (int j = 5; j >= 1; --j) CHECK(std::abs(sp[5 - j] - 2 * std::cos(j * std::numbers::pi / 6)) < 1e-14);

  auto [l1, v1] = eigpair(SymTridiagonal{{5.0}, {}}, 1);
  CHECK(l1 == 5.0);
  CHECK(v1 == std::vector<double>{1.0});

  auto [l2, v2] = eigpair(SymTridiagonal{{0.0, 0.0}, {1.0}}, 2);
  CHECK(l2 == Approx(1.0).epsilon(1e-15));
  CHECK(v2[0] == Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(v2[1] == Approx(std::sqrt(0.5)).epsilon(1e-14));

  try {
    eigpair(path, 6);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::index_out_of_range);
  }
  CHECK_THROWS_AS(eigpair(path, 0), Error);
}

TEST_CASE("random n=6 against characteristic polynomial roots") {
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_sym(6);
    auto want = char_poly_roots(t);
    auto got = eig_all(t).values;
    REQUIRE(want.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-10 * std::max(1.0, t.inf_norm()));
  }
}

TEST_CASE("eigenvalues against a dense solver, with split blocks") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
    auto t = random_sym(n == 1 ? 2 : n, trial % 3 == 0 ? 0.3 : 0.0);
    auto got = eig_all(t).values;
    auto want = dense_eigs(t);
    for (std::size_t k = 0; k < got.size(); ++k)
      CHECK(std::abs(got[k] - want[k]) <= 1e-10 * std::max(1.0, t.inf_norm()));
  }
}

TEST_CASE("eigenvector residuals and orthonormality") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 15);
    auto t = random_sym(n, trial % 4 == 0 ? 0.4 : 0.0);
    auto s = eig_full(t);
    CHECK(max_residual(t, s) <= 1e-9 * std::max(1.0, t.inf_norm()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double dot = std::inner_product(s.vectors[i].begin(), s.vectors[i].end(), s.vectors[j].begin(), 0.0);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("clustered and repeated eigenvalues") {
  // Two identical decoupled blocks: every eigenvalue is double.
  SymTridiagonal t{{1, 2, 3, 1, 2, 3}, {0.5, 0.5, 0, 0.5, 0.5}};
  auto s = eig_full(t);
  for (std::size_t k = 0; k < 6; k += 2) CHECK(std::abs(s.values[k] - s.values[k + 1]) < 1e-14);
  CHECK(max_residual(t, s) < 1e-12);

  // Wilkinson W21+: pairs agreeing to many digits.
  SymTridiagonal w;
  for (int i = -10; i <= 10; ++i) w.d.push_back(std::abs(i));
  w.e.assign(20, 1.0);
  auto sw = eig_full(w);
  CHECK(max_residual(w, sw) <= 1e-9 * w.inf_norm());
  CHECK(sw.values.back() == Approx(10.746194182903393).epsilon(1e-13));
  for (std::size_t i = 0; i < 21; ++i)
    for (std::size_t j = 0; j < i; ++j)
      CHECK(std::abs(std::inner_product(sw.vectors[i].begin(), sw.vectors[i].end(), sw.vectors[j].begin(), 0.0)) <
            1e-9);
}

TEST_CASE("trace, interlacing and gaps") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    auto t = random_sym(n);
    auto s = eig_all(t);
    const double trace = std::accumulate(t.d.begin(), t.d.end(), 0.0);
    const double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
    CHECK(std::abs(trace - sum) <= 1e-9 * static_cast<double>(n) * t.inf_norm());
    CHECK(s.min_gap() > 0.0);

    SymTridiagonal sub{{t.d.begin(), t.d.end() - 1}, {t.e.begin(), t.e.end() - 1}};
    auto ss = eig_all(sub).values;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      CHECK(s.values[k] <= ss[k] + 1e-12);
      CHECK(ss[k] <= s.values[k + 1] + 1e-12);
    }
  }
}

TEST_CASE("eigenvector sign convention is deterministic") {
  SymTridiagonal t{{0, 0, 0}, {1, 1}};
  auto s = eig_full(t);
  for (const auto& v : s.vectors) {
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    if (std::abs(sum) > 1e-10) CHECK(sum > 0);
  }
  // Middle vector (1, 0, -1)/sqrt 2 has zero sum: first significant entry positive.
  CHECK(s.vectors[1][0] > 0);
}
