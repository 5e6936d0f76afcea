// Laurent polynomials over ℚ in one formal variable t: the carrier of the
// Alexander quandle. Canonical form stores no zero coefficients, so equality
// of canonical maps is equality in the ring.
#pragma once

#include <map>
#include <string>

#include "emergent/rational.hpp"

namespace emg {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& constant);
  static LaurentPoly t(long exponent = 1);  // the monomial t^exponent

  const std::map<long, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(long exponent) const;
  void set_coeff(long exponent, const Rational& c);
  bool is_zero() const { return coeffs_.empty(); }

  LaurentPoly operator+(const LaurentPoly&) const;
  LaurentPoly operator-(const LaurentPoly&) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly&) const;
  LaurentPoly shift(long exponent) const;  // multiply by t^exponent
  bool operator==(const LaurentPoly&) const = default;

  // Substitute a nonzero rational for t.
  Rational eval(const Rational& t_value) const;
  // Sum of |coefficients|: a genuine norm on the coefficient space, used as
  // the model metric d(p,q) = |p-q|_1.
  Rational coeff_l1() const;

  std::string str() const;

 private:
  std::map<long, Rational> coeffs_;
};

}  // namespace emg
