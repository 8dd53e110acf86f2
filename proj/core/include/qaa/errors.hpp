#pragma once

#include <stdexcept>
#include <string>

namespace qaa {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands disagree on qubit count / dimension.
struct DimensionError : Error {
    using Error::Error;
};

// A state, unitary or projector failed its invariant check.
struct ValidationError : Error {
    using Error::Error;
};

// A simulation would exceed the configured qubit budget.
struct QubitBudgetError : Error {
    using Error::Error;
};

// A circuit references a black-box slot with no binding.
struct UnboundSlotError : Error {
    using Error::Error;
};

// A system's measured distribution does not match a declared promise.
struct PromiseViolation : Error {
    PromiseViolation(const std::string& what, double measured)
        : Error(what), measured_probability(measured) {}
    double measured_probability;
};

}  // namespace qaa
