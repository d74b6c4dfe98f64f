#pragma once

// The homogeneous conditions on (A_1..A_5) for a 6x6 reciprocal matrix to
// have three concentric elliptic components: two quadratics, one cubic, and
// the difference of the quadratics.

#include <array>
#include <span>

namespace kipp {

/// Total degree of each entry of tel_residuals, in the same order.
inline constexpr std::array<int, 4> kTelDegrees{2, 2, 3, 2};

/// {tel2, tel3, tel1, tel4}; tel4 = tel2 - tel3.
template <class T>
std::array<T, 4> tel_residuals(std::span<const T> a) {
  const T &A1 = a[0], &A2 = a[1], &A3 = a[2], &A4 = a[3], &A5 = a[4];
  auto k = [](int v) { return T(v); };
  const T tel2 = T{} - (A2 * A2 + A4 * A4) - k(2) * (A1 * A1 + A5 * A5) + k(2) * A3 * (A1 - A2 - A4 + A5) +
                 k(3) * (A1 * A4 + A1 * A5 + A2 * A5) - k(4) * (A1 * A2 + A4 * A5) + k(5) * A2 * A4;
  const T tel3 = A2 * A2 - A3 * A3 + A4 * A4 + k(3) * (A1 * A3 + A1 * A5 + A3 * A5) -
                 k(2) * (A1 * A1 + A5 * A5 + A2 * A3 - A2 * A4 + A3 * A4) - (A1 + A5) * (A2 + A4);
  const T tel1 = T{} - A1 * A1 * A1 + A2 * A2 * A2 + A3 * A3 * A3 + A4 * A4 * A4 - A5 * A5 * A5 +
                 (A1 - A3 + A5) * (A2 * A2 + A4 * A4) - k(2) * (A2 + A4) * (A1 * A1 + A3 * A3 + A5 * A5) +
                 k(2) * A2 * A4 * (A1 - A3 + A5) - k(3) * (A2 + A4) * (A3 * (A1 + A5) - A2 * A4) -
                 k(3) * (A1 + A5) * (A3 * A3 + A1 * A5) -
                 k(4) * (A1 * A1 * A3 + A3 * A5 * A5 + A1 * A2 * A5 + A1 * A4 * A5) + k(41) * A1 * A3 * A5;
  const T tel4 = A3 * A3 - A3 * (A1 + A5) - k(2) * (A2 * A2 + A4 * A4) - k(3) * (A1 * A2 + A4 * A5) +
                 k(3) * A2 * A4 + k(4) * (A1 * A4 + A2 * A5);
  return {tel2, tel3, tel1, tel4};
}

}  // namespace kipp
