#pragma once

#include <stdexcept>
#include <string>

namespace csmin {

// Base class for all library failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: step-size underflow, missing root bracket, an event
// that never fires, or an unconverged iteration.
struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(what) {}
};

// A trajectory left the admissible domain (r outside (0, pi) or theta
// outside (0, pi/2)).  Treated as a numerical failure by callers that probe
// trial initial data.
struct DomainError : NumericError {
    explicit DomainError(const std::string& what) : NumericError(what) {}
};

// A mathematical identity that must hold for a correct solution failed
// beyond its tolerance.  This signals a bug or unusable accuracy, never an
// acceptable result.
struct InvariantError : Error {
    explicit InvariantError(const std::string& what) : Error(what) {}
};

}  // namespace csmin
