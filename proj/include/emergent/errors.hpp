#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid model/run configuration.
struct ConfigError : Error {
  using Error::Error;
};

// DSL syntax error; offset is a 0-based byte position into the source text.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

// Operation not provided by this model (no metric, no group, ...).
struct UnsupportedError : Error {
  using Error::Error;
};

// Input outside the operation's domain (scale magnitude guard, chart pole).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace emg
