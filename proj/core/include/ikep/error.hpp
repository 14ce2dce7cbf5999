#pragma once

#include <stdexcept>
#include <string>

namespace ikep {

/// Input violates a documented precondition or data invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The request is well formed but exceeds a configured size cap
/// (coalition tables grow as 2^n, brute-force oracles as k^|V|).
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace ikep
