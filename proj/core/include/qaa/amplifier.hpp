#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaa/grover.hpp"
#include "qaa/system.hpp"

namespace qaa {

// Slot name under which materialized plans call the original circuit.
inline constexpr const char* kCallSlot = "C";

enum class StageKind {
    Grover,        // wrap the current circuit in an optimal Grover iterator
    AncillaReduce, // add one |0> ancilla measured by the halving projector
    SwapOutcomes,  // exchange the E and F labels
    Relabel,       // final label swap so the high side maps to E-always
};

struct Stage {
    StageKind kind = StageKind::Grover;
    PhasePair phases;        // Grover
    double declared_p = 0.0; // Grover: probability the stage is tuned for
    double epsilon = 0.0;    // AncillaReduce: probability being halved
    std::string label() const;
};

// Analytic (p_good, p_bad) trajectory; row 0 is (epsilon, delta), one more
// row per stage. "good" tracks the high side of the original promise through
// every stage, including label swaps.
struct ProbabilityLedger {
    std::vector<std::pair<double, double>> points;

    const std::pair<double, double>& initial() const { return points.front(); }
    const std::pair<double, double>& final() const { return points.back(); }
};

struct AmplificationPlan {
    SeparablePromise promise;
    std::vector<Stage> stages;
    ProbabilityLedger ledger;

    int ancilla_count() const;   // number of AncillaReduce stages
    // Calls to the original circuit and its adjoint once materialized:
    // x3 per Grover stage, x1 otherwise.
    std::int64_t query_count() const;
};

// Amplification chain for epsilon < 1/4: repeatedly p -> p(3-4p)^2 until the
// value first reaches 1/4. Each listed value equals sin^2(3^j beta) with
// sin^2(beta) = epsilon.
struct Schedule {
    double epsilon = 0.0;
    double beta = 0.0;
    std::vector<double> epsilons;

    int k() const { return static_cast<int>(epsilons.size()); }
};

Schedule amplification_schedule(double epsilon);

// Rank-1 projector onto sqrt(1/2e)|0> + sqrt(1-1/2e)|1>. Measuring it on an
// untouched |0> ancilla succeeds with probability exactly 1/(2 epsilon),
// reducing a success probability epsilon > 1/2 to exactly 1/2.
Projector halving_projector(double epsilon);

// Stages that drive the high side of the promise to probability 1:
//   epsilon in [1/4, 1/2] -> one Grover stage
//   epsilon > 1/2         -> ancilla reduce, then Grover at 1/2
//   epsilon < 1/4         -> schedule chain, then dispatch on the final value
AmplificationPlan build_separator(const SeparablePromise& promise);

// Full pipeline: separator, label swap, second separator on the complement,
// final relabel. Ends with the high side at E-probability 1 and the low side
// at 0 (both exactly, within prob_tol when simulated).
AmplificationPlan build_perfect_distinguisher(const SeparablePromise& promise);

// One stage applied to a concrete system.
QuantumSystem plan_step(const QuantumSystem& qs, const Stage& stage);

QuantumSystem apply_plan(const AmplificationPlan& plan, const QuantumSystem& qs);

struct StageRow {
    std::string stage;
    double analytic_good = 0.0;
    double analytic_bad = 0.0;
    double simulated_p = 0.0;
    double deviation = 0.0;
};

struct VerifiedApplication {
    QuantumSystem system;
    PromiseSide side = PromiseSide::Violation;
    std::vector<StageRow> trace;
};

// Checks the system against the plan's promise, then re-simulates after every
// stage and fails loudly (PromiseViolation) on drift beyond tol from the
// analytic ledger.
VerifiedApplication apply_plan_verified(const AmplificationPlan& plan, const QuantumSystem& qs,
                                        double tol = kProbTol);

// Plan materialized against an input/measurement only; the circuit calls the
// original through the unbound slot kCallSlot.
struct MaterializedPlan {
    StateVector input;
    Circuit circuit;
    Measurement2 measurement;
};

MaterializedPlan materialize_plan(const AmplificationPlan& plan, const StateVector& input,
                                  const Measurement2& measurement);

// Recursive chain of k nested pi-phase Grover stages vs. the flat circuit
// Q^{(3^k-1)/2} C with Q = C S_psi C† S_P. Returns the flat circuit and the
// max-entry deviation between the two unitaries.
struct IterativeEquivalent {
    Circuit circuit;
    double deviation = 0.0;
};

IterativeEquivalent iterative_equivalent(const QuantumSystem& qs, int k);

}  // namespace qaa
