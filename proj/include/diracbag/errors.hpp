#pragma once

#include <stdexcept>
#include <string>

namespace diracbag {

/// Invalid physical or numerical parameter (non-positive width, |x| > a, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Caller misuse, e.g. combining modes that belong to different configurations.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Hard numeric failure: integrator step underflow, eigensolver breakdown.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed: missed brackets, level-tracking ambiguity.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace diracbag
