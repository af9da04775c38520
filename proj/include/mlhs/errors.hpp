#pragma once

#include <stdexcept>
#include <string>

namespace mlhs {

/// Base class for all domain errors raised by the library.
/// Messages always name the violated precondition or budget.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible dimensions / moduli between operands.
class dimension_error : public error {
 public:
  using error::error;
};

// Bad construction parameters (failed hypothesis, invalid profile, ...).
class param_error : public error {
 public:
  using error::error;
};

// A configured work cap was exceeded (term cap, point cap, family cap).
class budget_error : public error {
 public:
  using error::error;
};

// Formula text rejected; carries a byte offset into the input.
class parse_error : public error {
 public:
  parse_error(const std::string& what, size_t pos)
      : error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
  size_t pos() const { return pos_; }

 private:
  size_t pos_;
};

}  // namespace mlhs
