#pragma once

#include <string>
#include <vector>

#include "qaa/circuit.hpp"
#include "qaa/unitary.hpp"
#include "qaa/validate.hpp"

namespace qaa {

// Two-outcome projective measurement <P_E, I - P_E>. Outcomes are always
// labeled E and F; only the E-projector is stored. The projector acts on the
// listed target qubits and implicitly as identity elsewhere, so measurements
// on wide registers stay cheap.
struct Measurement2 {
    Projector projector_E;     // on targets.size() qubits
    std::vector<int> targets;  // measured qubits, in tensor order
    int ambient = 0;           // total register size

    Measurement2() = default;
    // Projector over the whole register.
    explicit Measurement2(Projector p);
    Measurement2(Projector p, std::vector<int> targets, int ambient);

    // E = observing `outcome` on one qubit of an n-qubit register.
    static Measurement2 qubit_outcome(int ambient, int qubit, int outcome);

    int qubit_count() const { return ambient; }
    Measurement2 swapped() const;

    // Dense E-projector on the full register; intended for small registers.
    Projector full_projector() const;
};

// A source of samples over {E, F}: run the circuit on the input, measure.
struct QuantumSystem {
    StateVector input;
    Circuit circuit;
    Measurement2 measurement;

    QuantumSystem() = default;
    QuantumSystem(StateVector in, Circuit c, Measurement2 m);

    int qubit_count() const { return input.qubit_count; }
};

struct OutcomeDistribution {
    double p_E = 0.0;
    double p_F() const { return 1.0 - p_E; }
};

// Declares that every system in a collection has E-probability exactly delta
// or exactly epsilon, with delta < epsilon.
struct SeparablePromise {
    double delta = 0.0;
    double epsilon = 1.0;

    SeparablePromise() = default;
    SeparablePromise(double d, double e);
};

OutcomeDistribution outcome_probability(const QuantumSystem& qs);

// Input norm, measurement projector invariants, and unitarity of every raw
// gate in the circuit (bound sub-circuits included).
ValidationReport validate_system(const QuantumSystem& qs, double op_tol = kOpTol,
                                 double norm_tol = kNormTol);

// Appends ancillae in |0...0>, tensors the circuit with identity and the
// E-projector with `ancilla_projector`.
QuantumSystem extend_with_ancilla(const QuantumSystem& qs, int ancilla_count,
                                  const Projector& ancilla_projector);

// Relabels outcomes: the E-projector becomes its complement.
QuantumSystem swap_outcomes(const QuantumSystem& qs);

enum class PromiseSide { Low, High, Violation };

struct Classification {
    PromiseSide side = PromiseSide::Violation;
    double measured_p = 0.0;
};

std::vector<Classification> classify_separable(const std::vector<QuantumSystem>& systems,
                                               const SeparablePromise& promise,
                                               double tol = kProbTol);

// Single-system form; throws PromiseViolation on a mismatch.
PromiseSide require_separable(const QuantumSystem& qs, const SeparablePromise& promise,
                              double tol = kProbTol);

// Test/CLI fixture: a system with E-probability exactly sin^2(beta) realized
// by a single-qubit rotation, optionally padded with entangling gates on
// extra qubits that leave the distribution unchanged.
QuantumSystem engineered_system(double p, int extra_qubits = 0);

}  // namespace qaa
