#ifndef CARPET_ERRORS_HPP
#define CARPET_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace carpet {

// All library errors carry a short machine-readable kind (e.g. "DominationViolation")
// next to the human-readable message.
class CarpetError : public std::runtime_error {
 public:
  CarpetError(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Structural / axiom violations of an input system. CLI exit code 2.
class ValidationError : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

// Failures of numerical procedures (no bracket, non-finite values, ...). CLI exit code 3.
class NumericError : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

// Filesystem / format failures. CLI exit code 4.
class IoError : public CarpetError {
 public:
  using CarpetError::CarpetError;
};

}  // namespace carpet

#endif  // CARPET_ERRORS_HPP
