#include "qaa/grover.hpp"

#include <cmath>
#include <numbers>

#include "qaa/errors.hpp"

namespace qaa {

PhasePair::PhasePair(double t, double a) : theta(t), alpha(a) {
    if (t < 0.0 || t > std::numbers::pi || a < 0.0 || a > std::numbers::pi)
        throw Error("iterator phases must lie in [0, pi]");
}

double delta_gain(const PhasePair& phases, double p) {
    if (p < 0.0 || p > 1.0) throw Error("probability out of [0, 1]");
    const Complex et = std::polar(1.0, phases.theta);
    const Complex ea = std::polar(1.0, phases.alpha);
    const Complex c = et + ea - 1.0 + (1.0 - ea) * (1.0 - et) * p;
    return std::norm(c);
}

GainReport gain(const PhasePair& phases, double p) {
    const double d = delta_gain(phases, p);
    return GainReport{p, d, p * d};
}

OptimalPhase optimal_phase(double p) {
    if (p <= 0.0) throw Error("nothing to amplify: p must be positive");
    if (p > 0.5)
        throw Error("optimal_phase covers p <= 1/2; reduce larger p with an ancilla first");
    OptimalPhase out;
    if (p >= 0.25) {
        out.theta = std::acos(1.0 - 1.0 / (2.0 * p));
        out.delta_star = 1.0 / p;
        out.p_after = 1.0;
    } else {
        out.theta = std::numbers::pi;
        const double d = 3.0 - 4.0 * p;
        out.delta_star = d * d;
        out.p_after = p * d * d;
    }
    return out;
}

Circuit grover_iterator(const QuantumSystem& qs, const PhasePair& phases) {
    const int n = qs.qubit_count();
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;

    // I - (1 - e^{ia}) P ⊗ I factors through the measured qubits.
    const GateOp s_measure = GateOp::raw(
        phase_on_projector(qs.measurement.projector_E, phases.alpha), qs.measurement.targets);
    const GateOp s_input =
        GateOp::raw(phase_on_projector(Projector::onto(qs.input), phases.theta), all);

    Circuit g(n);
    g.append(qs.circuit);
    g.push(s_measure);
    g.append(circuit_adjoint(qs.circuit));
    g.push(s_input);
    g.append(qs.circuit);
    return g;
}

QuantumSystem optimal_iterator(const QuantumSystem& qs, double p) {
    const OptimalPhase opt = optimal_phase(p);
    const PhasePair phases{opt.theta, opt.theta};
    return QuantumSystem(qs.input, grover_iterator(qs, phases), qs.measurement);
}

}  // namespace qaa
