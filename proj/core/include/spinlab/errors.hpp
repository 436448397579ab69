#pragma once

#include <stdexcept>
#include <string>

namespace spinlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector, matrix or spinor sizes; unsupported dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Point outside a chart, degenerate immersion, invalid algebraic input.
struct DomainError : Error {
  using Error::Error;
};

/// Bad scenario files, unknown catalog keys, bad parameters.
struct ConfigError : Error {
  using Error::Error;
};

/// Unreadable input or unwritable output.
struct IoError : Error {
  using Error::Error;
};

}  // namespace spinlab
