#pragma once

#include <stdexcept>
#include <string>

namespace pop3d {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition or API contract was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

/// Tensor or layer shapes do not compose.
struct DimensionError : Error {
  using Error::Error;
};

/// A computation produced (or was fed) non-finite values.
struct NumericError : Error {
  using Error::Error;
};

/// A config, manifest, CSV or checkpoint file could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace pop3d
