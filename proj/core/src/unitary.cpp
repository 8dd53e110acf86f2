#include "qaa/unitary.hpp"

#include <cmath>
#include <string>

#include "qaa/errors.hpp"
#include "qaa/validate.hpp"

namespace qaa {

int UnitaryMatrix::qubit_count() const { return log2_exact(dim()); }
int Projector::qubit_count() const { return log2_exact(dim()); }

Projector Projector::basis_outcome(int qubits, int qubit, int outcome) {
    if (qubit < 0 || qubit >= qubits) throw Error("measured qubit out of range");
    if (outcome != 0 && outcome != 1) throw Error("outcome must be 0 or 1");
    const std::int64_t dim = std::int64_t{1} << qubits;
    Mat p = Mat::Zero(dim, dim);
    const int shift = qubits - 1 - qubit;  // qubit 0 is the most significant bit
    for (std::int64_t i = 0; i < dim; ++i)
        if (((i >> shift) & 1) == outcome) p(i, i) = 1.0;
    return Projector(std::move(p));
}

UnitaryMatrix phase_on_projector(const Projector& p, double angle) {
    require_valid(p);
    const Complex factor = Complex{1.0, 0.0} - std::polar(1.0, angle);
    Mat m = Mat::Identity(p.dim(), p.dim()) - factor * p.entries;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix fanout(int m) {
    if (m < 1) throw Error("fanout needs at least one qubit");
    if (2 * m > qubit_budget())
        throw QubitBudgetError("fanout(" + std::to_string(m) + ") spans " + std::to_string(2 * m) +
                               " qubits, over the budget of " + std::to_string(qubit_budget()));
    const std::int64_t dim = std::int64_t{1} << (2 * m);
    const std::int64_t half = std::int64_t{1} << m;
    Mat f = Mat::Zero(dim, dim);
    for (std::int64_t x = 0; x < half; ++x)
        for (std::int64_t b = 0; b < half; ++b)
            f(x * half + (x ^ b), x * half + b) = 1.0;
    return UnitaryMatrix(std::move(f));
}

}  // namespace qaa
