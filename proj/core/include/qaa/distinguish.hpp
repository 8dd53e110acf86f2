#pragma once

#include <cstdint>
#include <vector>

#include "qaa/amplifier.hpp"

namespace qaa {

// Everything needed to decide whether a black box is C1 or C2: the probe, the
// induced measurement about C1's output, and the amplification plan for the
// (0, epsilon) promise the pair induces.
struct DistinguisherPlan {
    Circuit circuit_1;
    Circuit circuit_2;
    StateVector probe;
    double epsilon = 0.0;  // 1 - |<psi1|psi2>|^2
    Measurement2 measurement;
    AmplificationPlan plan;
    MaterializedPlan materialized;  // calls the device through kCallSlot
};

enum class Verdict { IsC1, IsC2 };

double overlap_epsilon(const Circuit& c1, const Circuit& c2, const StateVector& probe);

DistinguisherPlan build_circuit_distinguisher(const Circuit& c1, const Circuit& c2,
                                              const StateVector& probe);

// Binds the device into every call site and simulates once; the outcome
// distribution is deterministic, so one sample decides. Throws
// PromiseViolation when the simulated probability is near neither 0 nor 1.
Verdict decide(const DistinguisherPlan& plan, const Circuit& blackbox, double tol = kProbTol);

// Eigenphases of S = C1† C2 with degenerate phases pooled, plus the simplex
// weights minimizing |<phi|S|phi>|^2 over phi = sum_j sqrt(c_j) |v_j>.
struct EigenPhaseProblem {
    std::vector<double> phases;
    std::vector<double> weights;  // solved: sum to 1, each in [0, 1]
    Mat eigenvectors;             // column j pairs with phases[j]
};

EigenPhaseProblem eigenphase_problem(const Circuit& c1, const Circuit& c2,
                                     std::uint64_t seed = 0);

// f(c) = sum_j c_j^2 + sum_{j != k} c_j c_k cos(theta_j - theta_k)
double phase_objective(const std::vector<double>& phases, const std::vector<double>& weights);

struct OptimalInput {
    StateVector probe;
    double epsilon = 0.0;  // 1 - f_OPT
};

// Probe maximizing the induced separation, via eigendecomposition of C1† C2
// and simplex minimization of the phase objective (closed forms for up to two
// distinct phases, projected gradient with restarts otherwise). Throws when
// the circuits agree up to a global phase.
OptimalInput optimal_input(const Circuit& c1, const Circuit& c2, std::uint64_t seed = 0);

enum class FaultVerdict { FaultFree, Faulty };

// optimal_input -> build_circuit_distinguisher -> decide.
FaultVerdict fault_detect(const Circuit& reference, const Circuit& fault_model,
                          const Circuit& device, std::uint64_t seed = 0);

}  // namespace qaa
