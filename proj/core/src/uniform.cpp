#include "qaa/uniform.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qaa/errors.hpp"
#include "qaa/validate.hpp"

namespace qaa {

OrthonormalFamily::OrthonormalFamily(std::vector<StateVector> members) : states(std::move(members)) {
    if (states.empty()) throw Error("family must not be empty");
    const int n = states.front().qubit_count;
    for (const auto& s : states) {
        if (s.qubit_count != n) throw DimensionError("family members differ in qubit count");
        require_valid(s);
    }
    for (size_t i = 0; i < states.size(); ++i)
        for (size_t j = i + 1; j < states.size(); ++j)
            if (std::abs(states[i].inner(states[j])) > 1e-10)
                throw ValidationError("family members " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are not orthogonal");
}

BasisMap basis_map(const OrthonormalFamily& family) {
    const std::int64_t dim = family.states.front().dim();
    const int count = family.size();
    if (count > dim) throw Error("family larger than the register dimension");

    // Columns of V: family members in order, then standard basis vectors
    // orthogonalized in index order. U = V† sends member j to |j>.
    Mat v(dim, dim);
    int cols = 0;
    for (const auto& s : family.states) v.col(cols++) = s.amplitudes;
    for (std::int64_t i = 0; i < dim && cols < dim; ++i) {
        Vec r = Vec::Zero(dim);
        r(i) = 1.0;
        // Two rounds of Gram-Schmidt keep the completion orthonormal.
        for (int round = 0; round < 2; ++round)
            for (int j = 0; j < cols; ++j) r -= v.col(j).dot(r) * v.col(j);
        const double norm = r.norm();
        if (norm > 1e-6) v.col(cols++) = r / norm;
    }
    if (cols < dim) throw Error("failed to complete the basis map");
    return BasisMap{UnitaryMatrix(v.adjoint())};
}

Circuit zero_phase_gate(int m, double theta) {
    if (m < 1) throw Error("register must have at least one qubit");
    if (m + 1 > qubit_budget())
        throw QubitBudgetError("zero_phase_gate needs " + std::to_string(m + 1) +
                               " qubits, over the budget");
    const int anc = m;
    Circuit c(m + 1);
    // Flag the all-zero register on the ancilla, phase it there, undo.
    for (int q = 0; q < m; ++q) c.push(GateOp::named(Gate::X, {q}));
    std::vector<int> mcx(m + 1);
    std::iota(mcx.begin(), mcx.end(), 0);
    c.push(GateOp::named(Gate::MCX, mcx));
    c.push(GateOp::named(Gate::X, {anc}));
    c.push(GateOp::named(Gate::Phase0, {anc}, theta));
    c.push(GateOp::named(Gate::X, {anc}));
    c.push(GateOp::named(Gate::MCX, mcx));
    for (int q = 0; q < m; ++q) c.push(GateOp::named(Gate::X, {q}));
    return c;
}

UniformReflection uniform_reflection(const BasisMap& map, double theta, int m) {
    if (map.qubit_count() != m) throw DimensionError("basis map does not match register size");
    const int total = 2 * m + 1;
    if (total > qubit_budget())
        throw QubitBudgetError("uniform reflection needs " + std::to_string(total) +
                               " qubits, over the budget");

    std::vector<int> data(m), copy(m);
    std::iota(data.begin(), data.end(), m);
    std::iota(copy.begin(), copy.end(), 0);

    UniformReflection out;
    out.register_qubits = m;

    // Copy the basis image of the data register into the copy register once.
    Circuit prep(total);
    prep.push(GateOp::raw(map.unitary, data));
    for (int i = 0; i < m; ++i) prep.push(GateOp::named(Gate::CX, {data[i], copy[i]}));
    prep.push(GateOp::raw(map.unitary.adjointed(), data));
    out.preparation = std::move(prep);

    // (I ⊗ U†) F (I ⊗ S_theta) F (I ⊗ U): with the copy register holding |v>,
    // this phases exactly the |psi_v> component of the data register.
    Circuit refl(total);
    refl.push(GateOp::raw(map.unitary, data));
    for (int i = 0; i < m; ++i) refl.push(GateOp::named(Gate::CX, {copy[i], data[i]}));
    std::vector<int> phase_map(m + 1);
    for (int i = 0; i < m; ++i) phase_map[i] = data[i];
    phase_map[m] = 2 * m;
    refl.append(zero_phase_gate(m, theta).embedded(total, phase_map));
    for (int i = 0; i < m; ++i) refl.push(GateOp::named(Gate::CX, {copy[i], data[i]}));
    refl.push(GateOp::raw(map.unitary.adjointed(), data));
    out.reflection = std::move(refl);
    return out;
}

double verify_uniform(const OrthonormalFamily& family, const BasisMap& map, double theta) {
    const int m = family.qubit_count();
    const UniformReflection ur = uniform_reflection(map, theta, m);
    const std::int64_t dim = std::int64_t{1} << m;
    const int total = 2 * m + 1;

    double worst = 0.0;
    for (int j = 0; j < family.size(); ++j) {
        const StateVector& psi = family.states[j];
        const Mat direct =
            Mat::Identity(dim, dim) -
            (Complex{1.0, 0.0} - std::polar(1.0, theta)) * psi.projector();
        const StateVector copy_reg = StateVector::basis(m, j);
        for (std::int64_t d = 0; d < dim; ++d) {
            StateVector in =
                copy_reg.tensor(StateVector::basis(m, d)).tensor(StateVector::zero(1));
            const StateVector got = apply_circuit(ur.reflection, in);
            StateVector want(total,
                             kron(kron(copy_reg.amplitudes, Vec(direct.col(d))),
                                  StateVector::zero(1).amplitudes));
            worst = std::max(worst, max_abs_diff(got.amplitudes, want.amplitudes));
        }
    }
    return worst;
}

}  // namespace qaa
