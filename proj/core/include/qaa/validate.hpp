#pragma once

#include <string>
#include <vector>

#include "qaa/state.hpp"
#include "qaa/unitary.hpp"

namespace qaa {

struct ValidationReport {
    struct Violation {
        std::string what;
        double deviation = 0.0;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const UnitaryMatrix& u, double tol = kOpTol);
ValidationReport validate(const Projector& p, double tol = kOpTol);
ValidationReport validate(const StateVector& s, double tol = kNormTol);

// Throws ValidationError with the report text when anything is violated.
void require_valid(const UnitaryMatrix& u, double tol = kOpTol);
void require_valid(const Projector& p, double tol = kOpTol);
void require_valid(const StateVector& s, double tol = kNormTol);

}  // namespace qaa
