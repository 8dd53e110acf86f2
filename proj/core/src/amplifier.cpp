#include "qaa/amplifier.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qaa/errors.hpp"

namespace qaa {

std::string Stage::label() const {
    std::ostringstream os;
    switch (kind) {
        case StageKind::Grover:
            os << "grover(theta=" << phases.theta << ", p=" << declared_p << ")";
            break;
        case StageKind::AncillaReduce: os << "ancilla-reduce(eps=" << epsilon << ")"; break;
        case StageKind::SwapOutcomes: os << "swap"; break;
        case StageKind::Relabel: os << "relabel"; break;
    }
    return os.str();
}

int AmplificationPlan::ancilla_count() const {
    int k = 0;
    for (const auto& s : stages)
        if (s.kind == StageKind::AncillaReduce) ++k;
    return k;
}

std::int64_t AmplificationPlan::query_count() const {
    std::int64_t q = 1;
    for (const auto& s : stages)
        if (s.kind == StageKind::Grover) q *= 3;
    return q;
}

// Values this close to a range boundary are treated as on it, so exact
// boundary cases (sin^2(pi/18) lands on 1/4 up to rounding) read cleanly.
constexpr double kBoundaryTol = 1e-12;

Schedule amplification_schedule(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw Error("amplification schedule requires 0 < epsilon < 1/4");
    Schedule s;
    s.epsilon = epsilon;
    s.beta = std::asin(std::sqrt(epsilon));
    double p = epsilon;
    // p at least quadruples per step while below 1/4, so this terminates.
    while (p < 0.25 - kBoundaryTol) {
        const double d = 3.0 - 4.0 * p;
        p = std::min(1.0, p * d * d);
        s.epsilons.push_back(p);
    }
    return s;
}

Projector halving_projector(double epsilon) {
    if (!(epsilon > 0.5 && epsilon <= 1.0))
        throw Error("halving projector requires 1/2 < epsilon <= 1");
    const double a = std::sqrt(1.0 / (2.0 * epsilon));
    const double b = std::sqrt(1.0 - 1.0 / (2.0 * epsilon));
    Mat p(2, 2);
    p << a * a, a * b, a * b, b * b;
    return Projector(std::move(p));
}

namespace {

std::pair<double, double> step_pair(const Stage& stage, std::pair<double, double> p) {
    switch (stage.kind) {
        case StageKind::Grover:
            // clamp away <= 1 ulp of overshoot so later stages see a probability
            return {std::min(1.0, p.first * delta_gain(stage.phases, p.first)),
                    std::min(1.0, p.second * delta_gain(stage.phases, p.second))};
        case StageKind::AncillaReduce:
            // division keeps epsilon/(2 epsilon) exactly one half
            return {p.first / (2.0 * stage.epsilon), p.second / (2.0 * stage.epsilon)};
        case StageKind::SwapOutcomes:
        case StageKind::Relabel: return {1.0 - p.first, 1.0 - p.second};
    }
    throw Error("unreachable stage kind");
}

void append_stage(AmplificationPlan& plan, Stage stage) {
    plan.ledger.points.push_back(step_pair(stage, plan.ledger.points.back()));
    plan.stages.push_back(std::move(stage));
}

Stage grover_stage(double declared_p) {
    const OptimalPhase opt = optimal_phase(declared_p);
    Stage s;
    s.kind = StageKind::Grover;
    s.phases = PhasePair{opt.theta, opt.theta};
    s.declared_p = declared_p;
    return s;
}

Stage reduce_stage(double epsilon) {
    Stage s;
    s.kind = StageKind::AncillaReduce;
    s.epsilon = epsilon;
    return s;
}

// Drives one coordinate of the ledger pair (0 = the high side, 1 = the low
// side after a swap) to probability 1.
void append_separator_stages(AmplificationPlan& plan, int coordinate) {
    auto value = [&] {
        const auto& p = plan.ledger.points.back();
        return coordinate == 0 ? p.first : p.second;
    };
    // Chain of pi-phase stages; each step's declared probability is the
    // value it starts from.
    while (value() < 0.25 - kBoundaryTol) append_stage(plan, grover_stage(value()));
    // The chain can overshoot 1/2 (e.g. 0.1875 -> 0.949); reduce such values
    // back to exactly 1/2 before the final stage.
    if (value() > 0.5 && value() < 1.0 - kBoundaryTol)
        append_stage(plan, reduce_stage(value()));
    if (value() < 1.0 - kBoundaryTol) append_stage(plan, grover_stage(value()));
}

}  // namespace

AmplificationPlan build_separator(const SeparablePromise& promise) {
    AmplificationPlan plan;
    plan.promise = promise;
    plan.ledger.points.push_back({promise.epsilon, promise.delta});
    if (promise.epsilon == 1.0) return plan;  // nothing to amplify
    append_separator_stages(plan, 0);
    return plan;
}

AmplificationPlan build_perfect_distinguisher(const SeparablePromise& promise) {
    AmplificationPlan plan = build_separator(promise);
    const auto after = plan.ledger.points.back();
    if (plan.stages.empty() && after.second == 0.0) return plan;  // already perfect

    Stage swap;
    swap.kind = StageKind::SwapOutcomes;
    append_stage(plan, swap);

    // The former low side now sits at 1 - delta'; drive it to 1 as well.
    if (plan.ledger.points.back().second < 1.0) append_separator_stages(plan, 1);

    // Composition leaves the high side at E-never; one more label swap
    // delivers the stated contract (high side -> always E).
    Stage relabel;
    relabel.kind = StageKind::Relabel;
    append_stage(plan, relabel);
    return plan;
}

QuantumSystem plan_step(const QuantumSystem& qs, const Stage& stage) {
    switch (stage.kind) {
        case StageKind::Grover:
            return QuantumSystem(qs.input, grover_iterator(qs, stage.phases), qs.measurement);
        case StageKind::AncillaReduce:
            return extend_with_ancilla(qs, 1, halving_projector(stage.epsilon));
        case StageKind::SwapOutcomes:
        case StageKind::Relabel: return swap_outcomes(qs);
    }
    throw Error("unreachable stage kind");
}

QuantumSystem apply_plan(const AmplificationPlan& plan, const QuantumSystem& qs) {
    QuantumSystem cur = qs;
    for (const auto& stage : plan.stages) cur = plan_step(cur, stage);
    return cur;
}

VerifiedApplication apply_plan_verified(const AmplificationPlan& plan, const QuantumSystem& qs,
                                        double tol) {
    VerifiedApplication out;
    out.side = require_separable(qs, plan.promise, tol);
    const int coord = out.side == PromiseSide::High ? 0 : 1;

    auto analytic = [&](size_t i) {
        const auto& p = plan.ledger.points[i];
        return coord == 0 ? p.first : p.second;
    };

    QuantumSystem cur = qs;
    {
        StageRow row;
        row.stage = "initial";
        row.analytic_good = plan.ledger.points[0].first;
        row.analytic_bad = plan.ledger.points[0].second;
        row.simulated_p = outcome_probability(cur).p_E;
        row.deviation = std::abs(row.simulated_p - analytic(0));
        out.trace.push_back(row);
    }
    for (size_t i = 0; i < plan.stages.size(); ++i) {
        cur = plan_step(cur, plan.stages[i]);
        StageRow row;
        row.stage = plan.stages[i].label();
        row.analytic_good = plan.ledger.points[i + 1].first;
        row.analytic_bad = plan.ledger.points[i + 1].second;
        row.simulated_p = outcome_probability(cur).p_E;
        row.deviation = std::abs(row.simulated_p - analytic(i + 1));
        out.trace.push_back(row);
        if (row.deviation > tol)
            throw PromiseViolation("simulation drifted from the ledger at stage '" + row.stage +
                                       "': |" + std::to_string(row.simulated_p) + " - " +
                                       std::to_string(analytic(i + 1)) + "| > tol",
                                   row.simulated_p);
    }
    out.system = std::move(cur);
    return out;
}

MaterializedPlan materialize_plan(const AmplificationPlan& plan, const StateVector& input,
                                  const Measurement2& measurement) {
    const int base = input.qubit_count;
    std::vector<int> all(base);
    std::iota(all.begin(), all.end(), 0);
    QuantumSystem sys(input, single_gate_circuit(base, GateOp::call(kCallSlot, all)), measurement);
    for (const auto& stage : plan.stages) sys = plan_step(sys, stage);
    return MaterializedPlan{std::move(sys.input), std::move(sys.circuit),
                            std::move(sys.measurement)};
}

IterativeEquivalent iterative_equivalent(const QuantumSystem& qs, int k) {
    if (k < 1) throw Error("k must be at least 1");
    const int n = qs.qubit_count();
    const PhasePair pi_pair{std::numbers::pi, std::numbers::pi};

    QuantumSystem recursive = qs;
    for (int j = 0; j < k; ++j)
        recursive = QuantumSystem(recursive.input, grover_iterator(recursive, pi_pair),
                                  recursive.measurement);

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    Circuit q_step(n);
    q_step.push(GateOp::raw(phase_on_projector(qs.measurement.projector_E, pi_pair.alpha),
                            qs.measurement.targets));
    q_step.append(circuit_adjoint(qs.circuit));
    q_step.push(GateOp::raw(phase_on_projector(Projector::onto(qs.input), pi_pair.theta), all));
    q_step.append(qs.circuit);

    std::int64_t reps = 1;
    for (int j = 0; j < k; ++j) reps *= 3;
    reps = (reps - 1) / 2;

    Circuit flat(n);
    flat.append(qs.circuit);
    for (std::int64_t r = 0; r < reps; ++r) flat.append(q_step);

    const double dev = max_abs_diff(circuit_unitary(recursive.circuit).entries,
                                    circuit_unitary(flat).entries);
    return IterativeEquivalent{std::move(flat), dev};
}

}  // namespace qaa
