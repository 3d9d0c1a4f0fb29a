#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infectio {

/// Malformed formula, sequent or proof-file text. `position()` is a byte
/// offset into the input that was being parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised when a semantic query exceeds the exhaustive-enumeration cap.
class TooManyVariables : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infectio
