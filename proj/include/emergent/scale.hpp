// The scale group Γ decorating dilations and crossings. Two realizations:
// exact positive rationals (Γ = (0,+∞) under multiplication) and integer
// powers of a fixed contraction generator (Γ = ℤ, written α^n or t^n).
// abs() is the morphism |·| : Γ → (0,+∞) used by schedules and sweeps.
#pragma once

#include <string>
#include <vector>

#include "emergent/errors.hpp"
#include "emergent/rational.hpp"

namespace emg {

enum class ScaleKind { rational, power };

class Scale {
 public:
  Scale() = default;  // the rational unit
  static Scale one(ScaleKind kind);
  static Scale from_rational(const Rational& value);
  // Generator power α^n; |α| = gen_abs (must lie in (0,1) so that growing
  // exponents contract).
  static Scale from_power(long exponent, const Rational& gen_abs = Rational(1, 2));

  ScaleKind kind() const { return kind_; }
  const Rational& value() const;  // rational kind only
  long exponent() const;          // power kind only
  const Rational& generator_abs() const { return gen_abs_; }

  Scale times(const Scale& other) const;
  Scale inverse() const;
  Scale pow(long n) const;
  bool is_one() const;
  bool operator==(const Scale& other) const;

  Rational abs() const;  // exact |·|
  std::string str() const;

  // "1/2" -> rational scale; "t" / "t^3" / "a^-2" -> generator power.
  static Scale parse(std::string_view text);

 private:
  ScaleKind kind_ = ScaleKind::rational;
  Rational value_{1};
  long exponent_ = 0;
  Rational gen_abs_{1, 2};
};

// A finite strictly |·|-decreasing sequence of scales standing in for
// "ε → 0 toward the absolute".
class Schedule {
 public:
  Schedule(std::vector<Scale> scales, std::string description);

  // ε = 2^-k for k in [k_min, k_max].
  static Schedule dyadic(long k_min, long k_max);
  // α^k for k in [k_min, k_max].
  static Schedule powers(long k_min, long k_max, const Rational& gen_abs = Rational(1, 2));

  const std::vector<Scale>& scales() const { return scales_; }
  const std::string& description() const { return description_; }
  std::size_t size() const { return scales_.size(); }
  const Scale& finest() const { return scales_.back(); }

  bool ends_below(const Rational& threshold) const;
  std::vector<Rational> abs_values() const;

 private:
  std::vector<Scale> scales_;
  std::string description_;
};

}  // namespace emg
