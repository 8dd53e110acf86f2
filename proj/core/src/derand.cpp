#include "qaa/derand.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qaa/errors.hpp"

namespace qaa {

namespace {

void check_fixture_shape(const LanguageFixture& fixture) {
    if (fixture.n < 1 || fixture.m < 0) throw Error("fixture needs n >= 1, m >= 0");
    if (fixture.circuit.qubit_count() != fixture.n + fixture.m)
        throw DimensionError("fixture circuit must act on n + m qubits");
    if (fixture.members.size() != (size_t{1} << fixture.n))
        throw DimensionError("membership table must cover all 2^n inputs");
}

}  // namespace

StateVector LanguageFixture::input_for(std::int64_t x) const {
    return StateVector::basis(n + m, x << m);
}

Measurement2 LanguageFixture::measurement() const {
    return Measurement2::qubit_outcome(n + m, 0, 1);
}

QuantumSystem LanguageFixture::system_for(std::int64_t x) const {
    return QuantumSystem(input_for(x), circuit, measurement());
}

void check_fixture(const LanguageFixture& fixture, double tol) {
    check_fixture_shape(fixture);
    for (std::int64_t x = 0; x < (std::int64_t{1} << fixture.n); ++x) {
        const double p = outcome_probability(fixture.system_for(x)).p_E;
        const double expected =
            fixture.members[x] ? fixture.promise.epsilon : fixture.promise.delta;
        if (std::abs(p - expected) > tol)
            throw PromiseViolation("fixture input x=" + std::to_string(x) + " measured p_E=" +
                                       std::to_string(p) + ", promised " +
                                       std::to_string(expected),
                                   p);
    }
}

StateVector HalfErrorCircuit::input_for(std::int64_t x) const {
    return StateVector::basis(total_qubits(), x << (n + m + 1));
}

Measurement2 HalfErrorCircuit::measurement() const {
    return Measurement2::qubit_outcome(total_qubits(), n, 1);
}

HalfErrorCircuit derandomize_half(const LanguageFixture& fixture) {
    check_fixture_shape(fixture);
    if (fixture.promise.delta != 0.0 || fixture.promise.epsilon != 0.5)
        throw Error("this construction requires the exact (0, 1/2) promise");

    const int n = fixture.n, m = fixture.m;
    const int total = 2 * n + m + 1;
    if (total > qubit_budget())
        throw QubitBudgetError("needs " + std::to_string(total) + " qubits, over the budget");

    // Registers: scratch [0, n), data [n, 2n), work [2n, 2n+m), ancilla last.
    std::vector<int> data_work(n + m);
    std::iota(data_work.begin(), data_work.end(), n);
    const Circuit base = fixture.circuit.embedded(total, data_work);

    std::vector<int> s0_map(n + m + 1);
    std::iota(s0_map.begin(), s0_map.end(), n);  // data+work, then the last qubit

    Circuit c(total);
    auto copy_scratch = [&] {
        for (int i = 0; i < n; ++i) c.push(GateOp::named(Gate::CX, {i, n + i}));
    };
    const double quarter_turn = std::numbers::pi / 2;  // phase factor i

    copy_scratch();
    c.append(base);
    // The measured branch (|1> on the data qubit) picks up the i phase; the
    // final-state algebra needs it there, not on |0>.
    c.push(GateOp::named(Gate::Phase, {n}, quarter_turn));
    c.append(circuit_adjoint(base));
    copy_scratch();
    c.append(zero_phase_gate(n + m, quarter_turn).embedded(total, s0_map));
    copy_scratch();
    c.append(base);

    HalfErrorCircuit out;
    out.circuit = std::move(c);
    out.n = n;
    out.m = m;
    return out;
}

StateVector UniformMaterialization::input_for(const StateVector& member) const {
    if (member.qubit_count != base_qubits)
        throw DimensionError("family member does not match the base register");
    return member.tensor(StateVector::zero(total_qubits() - base_qubits));
}

UniformMaterialization materialize_plan_uniform(const AmplificationPlan& plan,
                                                const OrthonormalFamily& family,
                                                const Measurement2& measurement) {
    const int base = family.qubit_count();
    if (measurement.qubit_count() != base)
        throw DimensionError("measurement does not match the family register");
    const int reduces = plan.ancilla_count();
    const int data = base + reduces;
    const int total = 2 * data + 1;
    if (total > qubit_budget())
        throw QubitBudgetError("uniform materialization needs " + std::to_string(total) +
                               " qubits, over the budget");

    // Reduce ancillae are allocated up front so one copy register covers the
    // final data register; reflections about member ⊗ |0...0> then embed the
    // stage-by-stage construction exactly.
    std::vector<StateVector> extended;
    extended.reserve(family.states.size());
    for (const auto& s : family.states)
        extended.push_back(reduces > 0 ? s.tensor(StateVector::zero(reduces)) : s);
    const BasisMap map = basis_map(OrthonormalFamily(std::move(extended)));

    // uniform_reflection lays out copy-then-data; here data comes first.
    std::vector<int> ur_map(total);
    for (int i = 0; i < data; ++i) ur_map[i] = data + i;
    for (int i = 0; i < data; ++i) ur_map[data + i] = i;
    ur_map[2 * data] = 2 * data;

    const Circuit prep = uniform_reflection(map, 0.0, data).preparation.embedded(total, ur_map);

    std::vector<int> base_targets(base);
    std::iota(base_targets.begin(), base_targets.end(), 0);
    Circuit cur(total);
    cur.push(GateOp::call(kCallSlot, base_targets));

    Measurement2 meas(measurement.projector_E, measurement.targets, data);
    int reduces_seen = 0;
    for (const auto& stage : plan.stages) {
        switch (stage.kind) {
            case StageKind::Grover: {
                const GateOp s_measure = GateOp::raw(
                    phase_on_projector(meas.projector_E, stage.phases.alpha), meas.targets);
                const Circuit reflection = uniform_reflection(map, stage.phases.theta, data)
                                               .reflection.embedded(total, ur_map);
                Circuit next(total);
                next.append(cur);
                next.push(s_measure);
                next.append(circuit_adjoint(cur));
                next.append(reflection);
                next.append(cur);
                cur = std::move(next);
                break;
            }
            case StageKind::AncillaReduce: {
                std::vector<int> targets = meas.targets;
                targets.push_back(base + reduces_seen);
                ++reduces_seen;
                meas = Measurement2(
                    Projector(kron(meas.projector_E.entries,
                                   halving_projector(stage.epsilon).entries)),
                    std::move(targets), data);
                break;
            }
            case StageKind::SwapOutcomes:
            case StageKind::Relabel: meas = meas.swapped(); break;
        }
    }

    UniformMaterialization out;
    Circuit full(total);
    full.append(prep);
    full.append(cur);
    out.circuit = std::move(full);
    out.measurement = Measurement2(meas.projector_E, meas.targets, total);
    out.base_qubits = base;
    out.data_qubits = data;
    return out;
}

FamilyDerandomization derandomize_family(const LanguageFixture& fixture, double tol) {
    check_fixture(fixture, tol);

    FamilyDerandomization out;
    out.plan = build_perfect_distinguisher(fixture.promise);

    std::vector<StateVector> members;
    const std::int64_t count = std::int64_t{1} << fixture.n;
    for (std::int64_t x = 0; x < count; ++x) members.push_back(fixture.input_for(x));
    out.uniform = materialize_plan_uniform(out.plan, OrthonormalFamily(std::move(members)),
                                           fixture.measurement());
    out.circuit = out.uniform.circuit.bound(kCallSlot, fixture.circuit);

    for (std::int64_t x = 0; x < count; ++x) {
        const QuantumSystem qs(out.uniform.input_for(fixture.input_for(x)), out.circuit,
                               out.uniform.measurement);
        VerdictRow row;
        row.x = x;
        row.expected = fixture.members[x];
        row.p = outcome_probability(qs).p_E;
        row.decided = row.p > 0.5;
        if (std::abs(row.p - (row.expected ? 1.0 : 0.0)) > tol)
            throw PromiseViolation("transformed system for x=" + std::to_string(x) +
                                       " is not deterministic: p_E=" + std::to_string(row.p),
                                   row.p);
        out.verdicts.push_back(row);
    }
    return out;
}

Circuit OracleFixture::oracle_for(std::int64_t x) const {
    Circuit c(1);
    if (truth.at(x)) c.push(GateOp::named(Gate::X, {0}));
    return c;
}

QuantumSystem OracleFixture::system_for(std::int64_t x) const {
    return QuantumSystem(StateVector::zero(qubits),
                         template_circuit.bound(kOracleSlot, oracle_for(x)), measurement);
}

OracleDerandomization derandomize_oracle(const OracleFixture& fixture,
                                         const SeparablePromise& promise, double tol) {
    if (fixture.qubits < 1) throw Error("oracle fixture needs at least one qubit");
    if (fixture.template_circuit.qubit_count() != fixture.qubits)
        throw DimensionError("template does not match the fixture register");
    if (fixture.measurement.qubit_count() != fixture.qubits)
        throw DimensionError("measurement does not match the fixture register");
    if (fixture.truth.empty()) throw Error("oracle truth table is empty");
    if (fixture.template_circuit.count_slot_sites(kOracleSlot) == 0)
        throw Error("template never calls the oracle");

    for (size_t x = 0; x < fixture.truth.size(); ++x) {
        const double p = outcome_probability(fixture.system_for(x)).p_E;
        const double expected = fixture.truth[x] ? promise.epsilon : promise.delta;
        if (std::abs(p - expected) > tol)
            throw PromiseViolation("oracle input x=" + std::to_string(x) + " measured p_E=" +
                                       std::to_string(p) + ", promised " +
                                       std::to_string(expected),
                                   p);
    }

    OracleDerandomization out;
    out.plan = build_perfect_distinguisher(promise);
    // All inputs are |0...0> and the measurement is shared, so the plain
    // materialization is already uniform; only oracle bindings vary per x.
    out.materialized =
        materialize_plan(out.plan, StateVector::zero(fixture.qubits), fixture.measurement);
    out.template_bound = out.materialized.circuit.bound(kCallSlot, fixture.template_circuit);

    for (size_t x = 0; x < fixture.truth.size(); ++x) {
        const Circuit bound = out.template_bound.bound(kOracleSlot, fixture.oracle_for(x));
        const QuantumSystem qs(out.materialized.input, bound, out.materialized.measurement);
        VerdictRow row;
        row.x = static_cast<std::int64_t>(x);
        row.expected = fixture.truth[x];
        row.p = outcome_probability(qs).p_E;
        row.decided = row.p > 0.5;
        if (std::abs(row.p - (row.expected ? 1.0 : 0.0)) > tol)
            throw PromiseViolation("transformed oracle system for x=" + std::to_string(x) +
                                       " is not deterministic: p_E=" + std::to_string(row.p),
                                   row.p);
        out.verdicts.push_back(row);
    }
    return out;
}

}  // namespace qaa
