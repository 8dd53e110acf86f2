#pragma once

#include "qaa/linalg.hpp"
#include "qaa/state.hpp"

namespace qaa {

// Square matrix on a power-of-two dimension with U†U = I (within op_tol).
struct UnitaryMatrix {
    Mat entries;

    UnitaryMatrix() = default;
    explicit UnitaryMatrix(Mat m) : entries(std::move(m)) {}

    std::int64_t dim() const { return entries.rows(); }
    int qubit_count() const;
    UnitaryMatrix adjointed() const { return UnitaryMatrix(entries.adjoint()); }
};

// Hermitian idempotent matrix (P = P†, P² = P within op_tol).
struct Projector {
    Mat entries;

    Projector() = default;
    explicit Projector(Mat m) : entries(std::move(m)) {}

    std::int64_t dim() const { return entries.rows(); }
    int qubit_count() const;

    static Projector onto(const StateVector& psi) { return Projector(psi.projector()); }
    // Projector selecting `outcome` on qubit `qubit` of an n-qubit register.
    static Projector basis_outcome(int qubits, int qubit, int outcome);
    static Projector identity(std::int64_t dim) { return Projector(Mat::Identity(dim, dim)); }

    Projector complement() const {
        return Projector(Mat::Identity(dim(), dim()) - entries);
    }
};

// I - (1 - e^{i*angle}) P : phases the range of P by e^{i*angle}.
UnitaryMatrix phase_on_projector(const Projector& p, double angle);

// XOR-copy of m basis qubits onto a second m-qubit register, as a permutation
// matrix on 2m qubits (source register first). Self-inverse; fanout(1) is CX.
UnitaryMatrix fanout(int m);

}  // namespace qaa
