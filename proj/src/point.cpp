#include "emergent/point.hpp"

#include <sstream>

#include "emergent/errors.hpp"

namespace emg {

const RatVec& Point::rats() const {
  if (!is_rats()) throw DomainError("point is not a rational vector");
  return std::get<RatVec>(payload_);
}

const DblVec& Point::dbls() const {
  if (!is_dbls()) throw DomainError("point is not a double vector");
  return std::get<DblVec>(payload_);
}

const LaurentPoly& Point::laurent() const {
  if (!is_laurent()) throw DomainError("point is not a Laurent polynomial");
  return std::get<LaurentPoly>(payload_);
}

std::string Point::str() const {
  if (is_laurent()) return laurent().str();
  std::ostringstream os;
  os << "(";
  if (is_rats()) {
    const auto& v = rats();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
  } else {
    const auto& v = dbls();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace emg
