#pragma once

#include <stdexcept>
#include <string>

namespace faceid {

/// Base class for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image / vector shapes do not line up (sizes, channel dims, block fit).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter value is outside its legal range.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Zero-norm input where a direction is required (cosine similarity).
class DegenerateVectorError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Gallery/probe protocol violations (missing subjects, empty pools).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Malformed files: undecodable images, bad feature/embedding records.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace faceid
