#pragma once

#include <stdexcept>

namespace capplan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown or missing unit tag, malformed quantity or config syntax.
struct UnitError : Error {
  using Error::Error;
};

// Violated type invariant or out-of-range argument.
struct DomainError : Error {
  using Error::Error;
};

// Exact-arithmetic guard exceeded (use the recursive path instead).
struct OverflowError : Error {
  using Error::Error;
};

// No configuration can satisfy the requested target.
struct InfeasibleError : Error {
  using Error::Error;
};

}  // namespace capplan
