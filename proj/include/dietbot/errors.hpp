#pragma once

#include <stdexcept>
#include <string>

namespace dietbot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; message carries line/field diagnostics.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A diary entry names a food that is not in the catalog.
class ReferentialError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input whose values break an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An analysis precondition does not hold (e.g. period too short).
class InsightError : public Error {
 public:
  using Error::Error;
};

class RealizationError : public Error {
 public:
  explicit RealizationError(std::string slot)
      : Error("unresolved template slot: " + slot), slot_(std::move(slot)) {}
  const std::string& slot() const { return slot_; }

 private:
  std::string slot_;
};

class SessionError : public Error {
 public:
  using Error::Error;
};

}  // namespace dietbot
