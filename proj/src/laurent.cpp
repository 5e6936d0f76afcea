#include "emergent/laurent.hpp"

#include <sstream>

#include "emergent/errors.hpp"

namespace emg {

LaurentPoly::LaurentPoly(const Rational& constant) {
  if (constant != 0) coeffs_[0] = constant;
}

LaurentPoly LaurentPoly::t(long exponent) {
  LaurentPoly p;
  p.coeffs_[exponent] = 1;
  return p;
}

Rational LaurentPoly::coeff(long exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set_coeff(long exponent, const Rational& c) {
  if (c == 0)
    coeffs_.erase(exponent);
  else
    coeffs_[exponent] = c;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : other.coeffs_) out.set_coeff(e, out.coeff(e) + c);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = -c;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
  return *this + (-other);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : other.coeffs_)
      out.set_coeff(e1 + e2, out.coeff(e1 + e2) + c1 * c2);
  return out;
}

LaurentPoly LaurentPoly::shift(long exponent) const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e + exponent] = c;
  return out;
}

Rational LaurentPoly::eval(const Rational& t_value) const {
  if (t_value == 0) throw DomainError("cannot evaluate a Laurent polynomial at t=0");
  Rational acc(0);
  for (const auto& [e, c] : coeffs_) acc += c * rat_pow(t_value, e);
  return acc;
}

Rational LaurentPoly::coeff_l1() const {
  Rational acc(0);
  for (const auto& kv : coeffs_) acc += rat_abs(kv.second);
  return acc;
}

std::string LaurentPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    Rational a = first ? c : rat_abs(c);
    first = false;
    if (e == 0) {
      os << rat_str(a);
      continue;
    }
    if (a != 1) os << rat_str(a) << "*";
    os << "t";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace emg
