#pragma once

#include <stdexcept>

namespace gaussl2 {

/// Caller error: out-of-range orders, size mismatches, malformed files.
/// The CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of an estimate does not hold (|alpha| < 1, non-convex weight).
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// alpha = 0: the operator collapses to multiplication by c.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gaussl2
