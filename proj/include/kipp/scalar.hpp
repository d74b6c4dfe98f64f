#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace kipp {

/// Exact rational numbers. Every finite double converts exactly.
/// Expression templates are off so generic code can use `auto` and `?:`.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Rational to_rational(double v) { return Rational(v); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double v) { return v; }

// Zero tests used by the generic polynomial code. These must be visible
// before the templates in poly.hpp / mpoly.hpp are defined.
inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& r) { return r.is_zero(); }

/// Converts a coefficient of one scalar type into another.
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return To(v.template convert_to<double>());
  } else {
    return To(v);
  }
}

}  // namespace kipp
