// Exact arbitrary-precision integers and rationals used throughout the
// library. Algebraic laws are checked over these so that a zero residual
// is a proof-by-evaluation at the sampled points, never a float artifact.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace emg {

using BigInt = boost::multiprecision::cpp_int;
// Expression templates are disabled: the fused-operation paths of the
// et_on rational (cpp_rational) miscompile aliased compound expressions in
// boost 1.74, and plain value semantics are what the algebra code assumes.
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// r^n for any integer n (r != 0 when n < 0).
inline Rational rat_pow(const Rational& r, long n) {
  if (n == 0) return Rational(1);
  Rational base = r;
  bool invert = n < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-(n + 1)) + 1ul
                           : static_cast<unsigned long>(n);
  if (invert) {
    if (base == 0) throw std::domain_error("rat_pow: 0 to a negative power");
    base = Rational(denominator(base), numerator(base));
  }
  Rational acc(1);
  while (k) {
    if (k & 1ul) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

// 2^-k as an exact rational.
inline Rational dyadic(long k) { return rat_pow(Rational(1, 2), k); }

std::string rat_str(const Rational& r);
// Accepts "p", "p/q", and decimal literals like "-1.25".
Rational parse_rational(std::string_view text);

}  // namespace emg
