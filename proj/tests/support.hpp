#pragma once

#include "kipp/mpoly.hpp"
#include "kipp/scalar.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace kipp::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Random parameters A_j in [1, hi].
inline std::vector<double> random_params(std::size_t count, double hi = 6.0) {
  std::vector<double> a(count);
  for (auto& v : a) v = uniform(1.0, hi);
  return a;
}

/// Random rationals p/q with small numerators, all >= 1.
inline std::vector<Rational> random_rationals(std::size_t count) {
  std::uniform_int_distribution<int> num(1, 97);
  std::uniform_int_distribution<int> den(1, 13);
  std::vector<Rational> a;
  for (std::size_t i = 0; i < count; ++i) a.push_back(Rational(1) + Rational(num(rng())) / Rational(den(rng())));
  return a;
}

/// The five symbols A_1..A_5.
inline std::vector<RationalMPoly> symbols5() {
  std::vector<RationalMPoly> a;
  for (std::size_t i = 0; i < 5; ++i) a.push_back(RationalMPoly::variable(i));
  return a;
}

}  // namespace kipp::test
