#pragma once

#include <stdexcept>
#include <string>

namespace banachlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad text encodings, out-of-range parameters,
/// config fields that fail validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A hard size cap was exceeded (e.g. exact norm requested for a
/// support larger than the configured bound).
class CapError : public Error {
 public:
  explicit CapError(const std::string& what) : Error(what) {}
};

}  // namespace banachlab
