#pragma once

#include <initializer_list>
#include <string_view>

#include "qaa/linalg.hpp"

namespace qaa {

// Unit-norm amplitude vector over n qubits. Qubit 0 is the most significant
// bit of the basis-state index throughout the library.
struct StateVector {
    int qubit_count = 0;
    Vec amplitudes;

    StateVector() = default;
    StateVector(int qubits, Vec amps);

    // |00...0> on `qubits` qubits.
    static StateVector zero(int qubits);
    // Basis state from a bit string, e.g. "01" -> |01>.
    static StateVector basis(std::string_view bits);
    // Basis state by index.
    static StateVector basis(int qubits, std::int64_t index);

    std::int64_t dim() const { return amplitudes.size(); }

    Complex inner(const StateVector& other) const;
    double norm_sq() const { return amplitudes.squaredNorm(); }

    // |psi><psi|
    Mat projector() const { return amplitudes * amplitudes.adjoint(); }

    StateVector tensor(const StateVector& other) const;
};

bool approx_equal(const StateVector& a, const StateVector& b, double tol = kNormTol);

}  // namespace qaa
