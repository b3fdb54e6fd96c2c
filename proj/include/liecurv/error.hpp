#pragma once

#include <stdexcept>
#include <string>

namespace liecurv {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure while constructing algebraic data (root systems, structure tables).
struct ConstructionError : Error {
  using Error::Error;
};

/// Invalid involution data (non-involutive map, degenerate pair).
struct InvolutionError : Error {
  using Error::Error;
};

/// Invalid user input (non-positive metric, malformed values).
struct InputError : Error {
  using Error::Error;
};

}  // namespace liecurv
