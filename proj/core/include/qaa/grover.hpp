#pragma once

#include "qaa/system.hpp"

namespace qaa {

// Phase pair (theta, alpha) of a generalized Grover iterator, both in [0, pi].
struct PhasePair {
    double theta = 0.0;
    double alpha = 0.0;

    PhasePair() = default;
    PhasePair(double t, double a);
};

struct GainReport {
    double p_before = 0.0;
    double delta_gain = 1.0;
    double p_after = 0.0;
};

// Multiplicative gain of one iterator application:
//   Delta = |e^{i theta} + e^{i alpha} - 1 + (1 - e^{i alpha})(1 - e^{i theta}) p|^2
double delta_gain(const PhasePair& phases, double p);

GainReport gain(const PhasePair& phases, double p);

struct OptimalPhase {
    double theta = 0.0;       // alpha = theta at the optimum
    double delta_star = 1.0;  // relative increase
    double p_after = 0.0;
};

// Best equal-phase iterator for a declared probability p in (0, 1/2]:
//   p in [1/4, 1/2] -> theta = arccos(1 - 1/(2p)), p' = 1
//   p  < 1/4        -> theta = pi,                 p' = p (3 - 4p)^2
// p > 1/2 is rejected; reduce it with an ancilla first (see amplifier).
OptimalPhase optimal_phase(double p);

// The circuit C S_psi C† S_P C: apply C, phase the E-subspace by e^{i alpha},
// undo C, phase the input state by e^{i theta}, apply C again.
Circuit grover_iterator(const QuantumSystem& qs, const PhasePair& phases);

// System with its circuit replaced by the optimal iterator for declared p.
QuantumSystem optimal_iterator(const QuantumSystem& qs, double p);

}  // namespace qaa
