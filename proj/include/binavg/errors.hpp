#pragma once

#include <stdexcept>
#include <string>

namespace binavg {

/// Malformed text input (numbers, mini-language specs, files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical domain failed (r outside (0,1),
/// N = 0 where N >= 1 is required, an unmet lemma hypothesis, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Something only meaningful in one arithmetic mode was requested in the other.
class ModeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Index past the end of a finite (file-backed) sequence or table.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A sweep whose limit was required did not settle within tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace binavg
