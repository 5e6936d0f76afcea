#include "emergent/scale.hpp"

#include <cctype>
#include <sstream>

namespace emg {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal", 0);
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+")
        throw ParseError("malformed decimal '" + s + "'", 0);
      BigInt num(digits);
      BigInt den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return Rational(num, den);
    }
    return Rational(BigInt(s));
  } catch (const std::runtime_error& e) {
    throw ParseError("malformed rational literal '" + s + "'", 0);
  }
}

Scale Scale::one(ScaleKind kind) {
  Scale s;
  s.kind_ = kind;
  return s;
}

Scale Scale::from_rational(const Rational& value) {
  if (value <= 0) throw ConfigError("scale value must be positive, got " + rat_str(value));
  Scale s;
  s.kind_ = ScaleKind::rational;
  s.value_ = value;
  return s;
}

Scale Scale::from_power(long exponent, const Rational& gen_abs) {
  if (gen_abs <= 0 || gen_abs >= 1)
    throw ConfigError("scale generator magnitude must lie in (0,1), got " + rat_str(gen_abs));
  Scale s;
  s.kind_ = ScaleKind::power;
  s.exponent_ = exponent;
  s.gen_abs_ = gen_abs;
  return s;
}

const Rational& Scale::value() const {
  if (kind_ != ScaleKind::rational) throw UnsupportedError("power scale has no rational value");
  return value_;
}

long Scale::exponent() const {
  if (kind_ != ScaleKind::power) throw UnsupportedError("rational scale has no exponent");
  return exponent_;
}

Scale Scale::times(const Scale& other) const {
  if (kind_ != other.kind_)
    throw ConfigError("cannot combine scales from different groups");
  Scale s = *this;
  if (kind_ == ScaleKind::rational) {
    s.value_ = value_ * other.value_;
  } else {
    if (gen_abs_ != other.gen_abs_)
      throw ConfigError("cannot combine powers of different generators");
    s.exponent_ = exponent_ + other.exponent_;
  }
  return s;
}

Scale Scale::inverse() const {
  Scale s = *this;
  if (kind_ == ScaleKind::rational)
    s.value_ = Rational(denominator(value_), numerator(value_));
  else
    s.exponent_ = -exponent_;
  return s;
}

Scale Scale::pow(long n) const {
  Scale s = *this;
  if (kind_ == ScaleKind::rational)
    s.value_ = rat_pow(value_, n);
  else
    s.exponent_ = exponent_ * n;
  return s;
}

bool Scale::is_one() const {
  return kind_ == ScaleKind::rational ? value_ == 1 : exponent_ == 0;
}

bool Scale::operator==(const Scale& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == ScaleKind::rational) return value_ == other.value_;
  return exponent_ == other.exponent_ && gen_abs_ == other.gen_abs_;
}

Rational Scale::abs() const {
  return kind_ == ScaleKind::rational ? value_ : rat_pow(gen_abs_, exponent_);
}

std::string Scale::str() const {
  if (kind_ == ScaleKind::rational) return rat_str(value_);
  return "t^" + std::to_string(exponent_);
}

Scale Scale::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty scale literal", 0);
  if (std::isdigit(static_cast<unsigned char>(text[0]))) {
    Rational r = parse_rational(text);
    if (r <= 0) throw ParseError("scale literal must be positive", 0);
    return from_rational(r);
  }
  auto caret = text.find('^');
  std::string name(text.substr(0, caret == std::string_view::npos ? text.size() : caret));
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      throw ParseError("malformed scale literal '" + std::string(text) + "'", 0);
  long k = 1;
  if (caret != std::string_view::npos) {
    try {
      k = std::stol(std::string(text.substr(caret + 1)));
    } catch (const std::exception&) {
      throw ParseError("malformed exponent in '" + std::string(text) + "'", 0);
    }
  }
  return from_power(k);
}

Schedule::Schedule(std::vector<Scale> scales, std::string description)
    : scales_(std::move(scales)), description_(std::move(description)) {
  if (scales_.empty()) throw ConfigError("schedule must be nonempty");
  for (std::size_t i = 1; i < scales_.size(); ++i) {
    if (!(scales_[i].abs() < scales_[i - 1].abs()))
      throw ConfigError("schedule magnitudes must be strictly decreasing");
  }
}

Schedule Schedule::dyadic(long k_min, long k_max) {
  if (k_min > k_max) throw ConfigError("schedule needs k_min <= k_max");
  std::vector<Scale> scales;
  for (long k = k_min; k <= k_max; ++k) scales.push_back(Scale::from_rational(emg::dyadic(k)));
  return Schedule(std::move(scales),
                  "2^-k, k=" + std::to_string(k_min) + ".." + std::to_string(k_max));
}

Schedule Schedule::powers(long k_min, long k_max, const Rational& gen_abs) {
  if (k_min > k_max) throw ConfigError("schedule needs k_min <= k_max");
  std::vector<Scale> scales;
  for (long k = k_min; k <= k_max; ++k) scales.push_back(Scale::from_power(k, gen_abs));
  return Schedule(std::move(scales),
                  "t^k, k=" + std::to_string(k_min) + ".." + std::to_string(k_max));
}

bool Schedule::ends_below(const Rational& threshold) const {
  return scales_.back().abs() < threshold;
}

std::vector<Rational> Schedule::abs_values() const {
  std::vector<Rational> out;
  out.reserve(scales_.size());
  for (const auto& s : scales_) out.push_back(s.abs());
  return out;
}

}  // namespace emg
