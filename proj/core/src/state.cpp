#include "qaa/state.hpp"

#include <string>

#include "qaa/errors.hpp"

namespace qaa {

StateVector::StateVector(int qubits, Vec amps) : qubit_count(qubits), amplitudes(std::move(amps)) {
    if (qubits < 1) throw Error("state needs at least one qubit");
    if (qubits > qubit_budget())
        throw QubitBudgetError("state on " + std::to_string(qubits) +
                               " qubits exceeds the budget of " + std::to_string(qubit_budget()));
    if (amplitudes.size() != (std::int64_t{1} << qubits))
        throw DimensionError("amplitude count does not match 2^qubits");
}

StateVector StateVector::zero(int qubits) {
    Vec v = Vec::Zero(std::int64_t{1} << qubits);
    v(0) = 1.0;
    return StateVector(qubits, std::move(v));
}

StateVector StateVector::basis(std::string_view bits) {
    std::int64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw Error("basis label must be a bit string");
        index = (index << 1) | (c == '1' ? 1 : 0);
    }
    return basis(static_cast<int>(bits.size()), index);
}

StateVector StateVector::basis(int qubits, std::int64_t index) {
    if (index < 0 || index >= (std::int64_t{1} << qubits))
        throw Error("basis index out of range");
    Vec v = Vec::Zero(std::int64_t{1} << qubits);
    v(index) = 1.0;
    return StateVector(qubits, std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
    if (qubit_count != other.qubit_count) throw DimensionError("states differ in qubit count");
    return amplitudes.dot(other.amplitudes);  // Eigen's dot conjugates the left factor
}

StateVector StateVector::tensor(const StateVector& other) const {
    return StateVector(qubit_count + other.qubit_count, kron(amplitudes, other.amplitudes));
}

bool approx_equal(const StateVector& a, const StateVector& b, double tol) {
    return a.qubit_count == b.qubit_count && max_abs_diff(a.amplitudes, b.amplitudes) <= tol;
}

}  // namespace qaa
