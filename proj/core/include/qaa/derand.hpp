#pragma once

#include <cstdint>
#include <vector>

#include "qaa/amplifier.hpp"
#include "qaa/uniform.hpp"

namespace qaa {

// Slot name for per-input oracle gates in oracle templates.
inline constexpr const char* kOracleSlot = "oracle";

// Finite decision problem at a fixed input length: a membership table over
// {0,1}^n and a base circuit on n + m qubits whose E-probability (qubit 0
// measuring 1) is exactly promise.epsilon on members and promise.delta
// otherwise.
struct LanguageFixture {
    int n = 0;
    int m = 0;
    std::vector<bool> members;  // size 2^n, indexed by input value
    Circuit circuit;            // on n + m qubits
    SeparablePromise promise;

    StateVector input_for(std::int64_t x) const;  // |x> ⊗ |0^m>
    Measurement2 measurement() const;             // qubit 0, outcome 1
    QuantumSystem system_for(std::int64_t x) const;
};

// Checks every input against the promise; throws PromiseViolation naming the
// offending input otherwise.
void check_fixture(const LanguageFixture& fixture, double tol = kProbTol);

// Membership circuit for a (0, 1/2) one-sided fixture built from explicit
// reflections: copies the input into a scratch register, phases the measured
// branch, undoes the base circuit, phases the all-zero state and reruns.
// After it, the measured qubit reads the membership bit deterministically.
// Registers: scratch [0, n), data [n, 2n), work [2n, 2n+m), phase ancilla
// at 2n + m.
struct HalfErrorCircuit {
    Circuit circuit;  // on 2n + m + 1 qubits
    int n = 0;
    int m = 0;

    int total_qubits() const { return 2 * n + m + 1; }
    StateVector input_for(std::int64_t x) const;  // |x>|0^n>|0^m>|0>
    Measurement2 measurement() const;             // first data-register qubit, outcome 1
};

HalfErrorCircuit derandomize_half(const LanguageFixture& fixture);

// Perfect-distinguisher plan materialized once over an orthonormal input
// family with the uniform reflection: the circuit is shared by every member,
// only the input (and slot bindings) vary.
// Layout: data [0, n_d), copy [n_d, 2 n_d), phase ancilla at 2 n_d, where
// n_d = base qubits + one per ancilla-reduce stage (allocated up front so the
// copy register covers the final data register).
struct UniformMaterialization {
    Circuit circuit;  // slot kCallSlot unbound
    Measurement2 measurement;
    int base_qubits = 0;
    int data_qubits = 0;

    int total_qubits() const { return 2 * data_qubits + 1; }
    StateVector input_for(const StateVector& member) const;
};

UniformMaterialization materialize_plan_uniform(const AmplificationPlan& plan,
                                                const OrthonormalFamily& family,
                                                const Measurement2& measurement);

struct VerdictRow {
    std::int64_t x = 0;
    bool expected = false;  // membership / oracle value
    double p = 0.0;         // simulated E-probability after the transform
    bool decided = false;   // p rounded to {0, 1}
};

struct FamilyDerandomization {
    AmplificationPlan plan;
    UniformMaterialization uniform;
    Circuit circuit;  // uniform.circuit with the fixture bound in
    std::vector<VerdictRow> verdicts;
};

FamilyDerandomization derandomize_family(const LanguageFixture& fixture, double tol = kProbTol);

// Boolean function presented through a per-input oracle gate
// |b> -> |b ⊕ Φ(x)> on one answer qubit of a fixed template.
struct OracleFixture {
    int qubits = 0;
    int answer_qubit = 0;
    Circuit template_circuit;  // contains kOracleSlot call sites
    Measurement2 measurement;
    std::vector<bool> truth;  // Φ, indexed by x

    Circuit oracle_for(std::int64_t x) const;  // I or X on one qubit
    QuantumSystem system_for(std::int64_t x) const;
};

struct OracleDerandomization {
    AmplificationPlan plan;
    MaterializedPlan materialized;  // kCallSlot and kOracleSlot unbound
    Circuit template_bound;         // kCallSlot bound to the fixture template
    std::vector<VerdictRow> verdicts;
};

OracleDerandomization derandomize_oracle(const OracleFixture& fixture,
                                         const SeparablePromise& promise,
                                         double tol = kProbTol);

}  // namespace qaa
