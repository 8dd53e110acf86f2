#pragma once

#include <vector>

#include "qaa/circuit.hpp"

namespace qaa {

// Pairwise-orthogonal unit vectors on a common register.
struct OrthonormalFamily {
    std::vector<StateVector> states;

    OrthonormalFamily() = default;
    explicit OrthonormalFamily(std::vector<StateVector> members);

    int qubit_count() const { return states.front().qubit_count; }
    int size() const { return static_cast<int>(states.size()); }
};

// Unitary sending the j-th family member to the j-th standard basis state,
// completed deterministically on the orthogonal complement.
struct BasisMap {
    UnitaryMatrix unitary;
    int qubit_count() const { return unitary.qubit_count(); }
};

BasisMap basis_map(const OrthonormalFamily& family);

// Circuit on m+1 qubits (ancilla last, in and out |0>) acting on the first m
// qubits as I - (1 - e^{i theta}) |0^m><0^m|.
Circuit zero_phase_gate(int m, double theta);

// Input-independent realization of the reflection about a family member.
// `preparation` copies the basis image of the data register into the copy
// register once, up front; `reflection` then acts on the data register as
// I - (1 - e^{i theta}) |psi_v><psi_v| whenever the copy register holds |v>.
// Register layout: copy [0, m), data [m, 2m), phase ancilla at 2m.
struct UniformReflection {
    Circuit preparation;
    Circuit reflection;
    int register_qubits = 0;  // m
};

UniformReflection uniform_reflection(const BasisMap& map, double theta, int m);

// Max over family members of the entrywise gap between the uniform reflection
// (copy register held at the member's basis image) and the direct reflection
// matrix on the data register.
double verify_uniform(const OrthonormalFamily& family, const BasisMap& map, double theta);

}  // namespace qaa
