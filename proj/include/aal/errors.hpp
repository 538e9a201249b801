#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aal {

// Base class of every error raised by the library. The CLI maps subclasses
// onto exit codes (see tools/aalcheck.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& var)
      : Error("unbound variable: " + var) {}
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class SizeBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotACongruence : public Error {
 public:
  using Error::Error;
};

class NotAFilter : public Error {
 public:
  using Error::Error;
};

class EmptyRelativeCongruenceSet : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class UnknownExample : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Step budget shared by every exhaustive enumeration. Counts elementary
// steps (table lookups, candidate maps, valuations) rather than wall time.
struct Budget {
  std::uint64_t max_steps = 10'000'000;

  void require(std::uint64_t steps, const std::string& what) const {
    if (steps > max_steps) {
      throw SizeBudgetExceeded(what + " needs " + std::to_string(steps) +
                               " steps, budget is " +
                               std::to_string(max_steps));
    }
  }
};

// Saturating a^b, used for budget estimates.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace aal
