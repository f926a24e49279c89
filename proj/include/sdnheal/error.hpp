#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdnheal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document (bad JSON, missing keys, wrong types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that breaks a model invariant. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "validation failure";
    for (const auto& s : v) out += "; " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

/// Reference to an id that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A size limit (parent cap, enumeration cap) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Evidence with likelihood zero under the network.
class ImpossibleEvidence : public Error {
 public:
  using Error::Error;
};

class InconclusiveDiagnosis : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdnheal
