#include "qaa/system.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "qaa/errors.hpp"
#include "qaa/validate.hpp"

namespace qaa {

Measurement2::Measurement2(Projector p) : projector_E(std::move(p)) {
    ambient = projector_E.qubit_count();
    targets.resize(ambient);
    std::iota(targets.begin(), targets.end(), 0);
}

Measurement2::Measurement2(Projector p, std::vector<int> tgt, int amb)
    : projector_E(std::move(p)), targets(std::move(tgt)), ambient(amb) {
    if (projector_E.dim() != (std::int64_t{1} << targets.size()))
        throw DimensionError("measurement projector does not match its target count");
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= ambient) throw DimensionError("measurement target out of range");
        if (!seen.insert(t).second) throw Error("duplicate measurement target");
    }
}

Measurement2 Measurement2::qubit_outcome(int ambient, int qubit, int outcome) {
    return Measurement2(Projector::basis_outcome(1, 0, outcome), {qubit}, ambient);
}

Measurement2 Measurement2::swapped() const {
    // (I - P) ⊗ I is the complement of P ⊗ I, so the target list is kept.
    return Measurement2(projector_E.complement(), targets, ambient);
}

Projector Measurement2::full_projector() const {
    const std::int64_t dim = std::int64_t{1} << ambient;
    Mat full = Mat::Zero(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        Vec col = Vec::Zero(dim);
        col(j) = 1.0;
        full.col(j) = apply_to_targets(projector_E.entries, targets, col, ambient);
    }
    return Projector(std::move(full));
}

QuantumSystem::QuantumSystem(StateVector in, Circuit c, Measurement2 m)
    : input(std::move(in)), circuit(std::move(c)), measurement(std::move(m)) {
    if (circuit.qubit_count() != input.qubit_count ||
        measurement.qubit_count() != input.qubit_count)
        throw DimensionError("system components disagree on qubit count");
}

SeparablePromise::SeparablePromise(double d, double e) : delta(d), epsilon(e) {
    if (!(0.0 <= delta && delta < epsilon && epsilon <= 1.0))
        throw Error("promise requires 0 <= delta < epsilon <= 1");
}

OutcomeDistribution outcome_probability(const QuantumSystem& qs) {
    const StateVector out = apply_circuit(qs.circuit, qs.input);
    const Vec projected = apply_to_targets(qs.measurement.projector_E.entries,
                                           qs.measurement.targets, out.amplitudes,
                                           qs.qubit_count());
    return OutcomeDistribution{projected.squaredNorm()};
}

namespace {
void validate_ops(const Circuit& circuit, const std::string& where, double op_tol,
                  ValidationReport& out) {
    for (size_t i = 0; i < circuit.ops().size(); ++i) {
        const auto& op = circuit.ops()[i];
        if (op.kind == GateOp::Kind::Raw) {
            const auto report = validate(UnitaryMatrix(*op.matrix), op_tol);
            for (const auto& v : report.violations)
                out.violations.push_back(
                    {where + " op " + std::to_string(i) + ": " + v.what, v.deviation});
        }
    }
    for (const auto& [name, impl] : circuit.bindings())
        validate_ops(*impl, where + "/" + name, op_tol, out);
}
}  // namespace

ValidationReport validate_system(const QuantumSystem& qs, double op_tol, double norm_tol) {
    ValidationReport out;
    for (const auto& v : validate(qs.input, norm_tol).violations)
        out.violations.push_back({"input: " + v.what, v.deviation});
    for (const auto& v : validate(qs.measurement.projector_E, op_tol).violations)
        out.violations.push_back({"measurement: " + v.what, v.deviation});
    validate_ops(qs.circuit, "circuit", op_tol, out);
    return out;
}

QuantumSystem extend_with_ancilla(const QuantumSystem& qs, int ancilla_count,
                                  const Projector& ancilla_projector) {
    if (ancilla_count < 1) throw Error("ancilla_count must be at least 1");
    if (ancilla_projector.dim() != (std::int64_t{1} << ancilla_count))
        throw DimensionError("ancilla projector dimension does not match ancilla count");
    const int total = qs.qubit_count() + ancilla_count;
    if (total > qubit_budget())
        throw QubitBudgetError("ancilla extension to " + std::to_string(total) +
                               " qubits exceeds the budget");

    StateVector input = qs.input.tensor(StateVector::zero(ancilla_count));
    // C ⊗ I: same ops, wider register.
    std::vector<int> id_map(qs.qubit_count());
    std::iota(id_map.begin(), id_map.end(), 0);
    Circuit circuit = qs.circuit.embedded(total, id_map);

    std::vector<int> targets = qs.measurement.targets;
    for (int a = 0; a < ancilla_count; ++a) targets.push_back(qs.qubit_count() + a);
    Projector extended(kron(qs.measurement.projector_E.entries, ancilla_projector.entries));
    return QuantumSystem(std::move(input), std::move(circuit),
                         Measurement2(std::move(extended), std::move(targets), total));
}

QuantumSystem swap_outcomes(const QuantumSystem& qs) {
    return QuantumSystem(qs.input, qs.circuit, qs.measurement.swapped());
}

std::vector<Classification> classify_separable(const std::vector<QuantumSystem>& systems,
                                               const SeparablePromise& promise, double tol) {
    if (systems.empty()) throw Error("classify_separable needs at least one system");
    std::vector<Classification> out;
    out.reserve(systems.size());
    for (const auto& qs : systems) {
        const double p = outcome_probability(qs).p_E;
        Classification c;
        c.measured_p = p;
        if (std::abs(p - promise.delta) <= tol)
            c.side = PromiseSide::Low;
        else if (std::abs(p - promise.epsilon) <= tol)
            c.side = PromiseSide::High;
        else
            c.side = PromiseSide::Violation;
        out.push_back(c);
    }
    return out;
}

PromiseSide require_separable(const QuantumSystem& qs, const SeparablePromise& promise,
                              double tol) {
    const auto c = classify_separable({qs}, promise, tol).front();
    if (c.side == PromiseSide::Violation)
        throw PromiseViolation("measured p_E = " + std::to_string(c.measured_p) +
                                   " matches neither promise side (" +
                                   std::to_string(promise.delta) + ", " +
                                   std::to_string(promise.epsilon) + ")",
                               c.measured_p);
    return c.side;
}

QuantumSystem engineered_system(double p, int extra_qubits) {
    if (p < 0.0 || p > 1.0) throw Error("probability out of [0, 1]");
    const double beta = std::asin(std::sqrt(p));
    const int n = 1 + extra_qubits;
    Circuit c(n);
    c.push(GateOp::named(Gate::RY, {0}, 2.0 * beta));
    // Padding below acts after the rotation and commutes with the measured
    // split, so p_E stays sin^2(beta).
    for (int q = 1; q < n; ++q) {
        c.push(GateOp::named(Gate::H, {q}));
        c.push(GateOp::named(Gate::CX, {0, q}));
    }
    return QuantumSystem(StateVector::zero(n), std::move(c),
                         Measurement2::qubit_outcome(n, 0, 1));
}

}  // namespace qaa
