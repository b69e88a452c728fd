#pragma once

#include <stdexcept>
#include <string>

namespace sharpdepth {

/// Base of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input (files, manifests, masks). CLI exit code 3.
struct DataError : Error {
  using Error::Error;
};

/// Degenerate or diverging numerics. CLI exit code 4.
struct NumericError : Error {
  using Error::Error;
};

struct DegenerateRange : NumericError {
  using NumericError::NumericError;
};

struct SingularSystem : NumericError {
  using NumericError::NumericError;
};

struct EmptyMask : DataError {
  using DataError::DataError;
};

struct DimensionMismatch : DataError {
  using DataError::DataError;
};

struct NonPositiveDepth : DataError {
  using DataError::DataError;
};

struct NonFinite : NumericError {
  using NumericError::NumericError;
};

struct BehindCamera : NumericError {
  using NumericError::NumericError;
};

struct MalformedHeader : DataError {
  using DataError::DataError;
};

struct TruncatedPayload : DataError {
  using DataError::DataError;
};

struct UnsupportedVariant : DataError {
  using DataError::DataError;
};

}  // namespace sharpdepth
