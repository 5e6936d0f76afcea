// A point of a model carrier. The payload is owned by the model that minted
// it: rational coordinate vectors (exact modes), double vectors (double
// modes), or a Laurent polynomial (Alexander quandle).
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "emergent/laurent.hpp"
#include "emergent/rational.hpp"

namespace emg {

using RatVec = std::vector<Rational>;
using DblVec = std::vector<double>;

class Point {
 public:
  Point() = default;
  explicit Point(RatVec v) : payload_(std::move(v)) {}
  explicit Point(DblVec v) : payload_(std::move(v)) {}
  explicit Point(LaurentPoly p) : payload_(std::move(p)) {}

  bool is_rats() const { return std::holds_alternative<RatVec>(payload_); }
  bool is_dbls() const { return std::holds_alternative<DblVec>(payload_); }
  bool is_laurent() const { return std::holds_alternative<LaurentPoly>(payload_); }

  const RatVec& rats() const;
  const DblVec& dbls() const;
  const LaurentPoly& laurent() const;

  bool operator==(const Point&) const = default;
  std::string str() const;

 private:
  std::variant<RatVec, DblVec, LaurentPoly> payload_;
};

}  // namespace emg
