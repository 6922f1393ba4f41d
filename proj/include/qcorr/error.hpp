#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Raised for inputs outside a function's domain: unphysical states,
// non-unit bases, out-of-range parameters, broken closed-form preconditions.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal numerical invariant fails (e.g. an entropy
// difference that should be non-negative comes out clearly negative).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
