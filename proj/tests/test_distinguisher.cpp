#include <doctest.h>

#include <numbers>

#include "test_util.hpp"

using namespace qaa;
using namespace qaa::testing;

namespace {
const double kPi = std::numbers::pi;

StateVector plus_state() {
    Vec v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    return StateVector(1, v);
}

Circuit phase_circuit(double angle) {
    return single_gate_circuit(1, GateOp::named(Gate::Phase, {0}, angle));
}
}  // namespace

TEST_CASE("overlap_epsilon: equal circuits give zero") {
    std::mt19937_64 rng(1201);
    const Circuit c = random_circuit(2, 6, rng);
    CHECK(overlap_epsilon(c, c, random_state(2, rng)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("overlap_epsilon: I vs X on |0> is fully separated") {
    CHECK(overlap_epsilon(identity_circuit(1), single_gate_circuit(1, GateOp::named(Gate::X, {0})),
                          StateVector::zero(1)) == doctest::Approx(1.0));
}

TEST_CASE("overlap_epsilon: I vs Z on |+> is fully separated") {
    CHECK(overlap_epsilon(identity_circuit(1), single_gate_circuit(1, GateOp::named(Gate::Z, {0})),
                          plus_state()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distinguisher for I vs Z decides both devices deterministically") {
    const Circuit z = single_gate_circuit(1, GateOp::named(Gate::Z, {0}));
    const DistinguisherPlan plan = build_circuit_distinguisher(identity_circuit(1), z, plus_state());
    CHECK(plan.epsilon == doctest::Approx(1.0));
    CHECK(plan.plan.stages.empty());  // already a perfect promise
    CHECK(decide(plan, z) == Verdict::IsC2);
    CHECK(decide(plan, identity_circuit(1)) == Verdict::IsC1);
}

TEST_CASE("distinguisher for I vs phase(pi/2) amplifies a (0, 1/2) promise") {
    const DistinguisherPlan plan =
        build_circuit_distinguisher(identity_circuit(1), phase_circuit(kPi / 2), plus_state());
    CHECK(plan.epsilon == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plan.plan.query_count() == 3);
    CHECK(decide(plan, phase_circuit(kPi / 2)) == Verdict::IsC2);
    CHECK(decide(plan, identity_circuit(1)) == Verdict::IsC1);
}

TEST_CASE("identical circuits cannot be planned against") {
    CHECK_THROWS_AS(
        build_circuit_distinguisher(identity_circuit(1), identity_circuit(1), plus_state()),
        Error);
}

TEST_CASE("an off-promise device is flagged instead of classified") {
    // The plan below amplifies declared 1/2; a device inducing p = 0.3 lands
    // far from both 0 and 1 after amplification.
    const DistinguisherPlan plan =
        build_circuit_distinguisher(identity_circuit(1), phase_circuit(kPi / 2), plus_state());
    const double gamma = std::acos(0.4);  // 1 - |(1 + e^{i gamma})/2|^2 = 0.3
    CHECK_THROWS_AS(decide(plan, phase_circuit(gamma)), PromiseViolation);
}

TEST_CASE("decide is deterministic over 50 random separated pairs") {
    std::mt19937_64 rng(1202);
    std::uniform_int_distribution<int> qubits_pick(1, 3);
    int done = 0;
    while (done < 50) {
        const int n = qubits_pick(rng);
        const Circuit c1 = random_circuit(n, 6, rng);
        const Circuit c2 = random_circuit(n, 6, rng);
        const StateVector probe = random_state(n, rng);
        if (overlap_epsilon(c1, c2, probe) < 0.05) continue;
        const DistinguisherPlan plan = build_circuit_distinguisher(c1, c2, probe);
        CHECK(decide(plan, c2) == Verdict::IsC2);
        CHECK(decide(plan, c1) == Verdict::IsC1);

        // the underlying probabilities sit within 1e-7 of {0, 1}
        const QuantumSystem sys2(plan.materialized.input,
                                 plan.materialized.circuit.bound(kCallSlot, c2),
                                 plan.materialized.measurement);
        const QuantumSystem sys1(plan.materialized.input,
                                 plan.materialized.circuit.bound(kCallSlot, c1),
                                 plan.materialized.measurement);
        CHECK(std::abs(outcome_probability(sys2).p_E - 1.0) < 1e-7);
        CHECK(std::abs(outcome_probability(sys1).p_E) < 1e-7);
        ++done;
    }
}

TEST_CASE("eigenphase objective agrees with the direct overlap of the probe") {
    std::mt19937_64 rng(1203);
    for (int t = 0; t < 10; ++t) {
        const Circuit c1 = random_circuit(2, 5, rng);
        const Circuit c2 = random_circuit(2, 5, rng);
        OptimalInput opt;
        try {
            opt = optimal_input(c1, c2, 7);
        } catch (const Error&) {
            continue;  // indistinguishable draw
        }
        const double direct = overlap_epsilon(c1, c2, opt.probe);
        CHECK(std::abs((1.0 - opt.epsilon) - (1.0 - direct)) < 1e-9);
    }
}

TEST_CASE("optimal_input: I vs Z splits evenly and separates fully") {
    const Circuit z = single_gate_circuit(1, GateOp::named(Gate::Z, {0}));
    const OptimalInput opt = optimal_input(identity_circuit(1), z);
    CHECK(opt.epsilon == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(overlap_epsilon(identity_circuit(1), z, opt.probe) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimal_input: I vs phase(pi/2) caps at one half") {
    const OptimalInput opt = optimal_input(identity_circuit(1), phase_circuit(kPi / 2));
    CHECK(opt.epsilon == doctest::Approx(0.5).epsilon(1e-9));

    const EigenPhaseProblem problem = eigenphase_problem(identity_circuit(1), phase_circuit(kPi / 2));
    REQUIRE(problem.weights.size() == 2);
    CHECK(problem.weights[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(problem.weights[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(phase_objective(problem.phases, problem.weights) == doctest::Approx(0.5).epsilon(1e-9));

    // brute force over probes confirms nothing beats 1/2
    std::mt19937_64 rng(1204);
    double best = 0.0;
    for (int t = 0; t < 1000; ++t)
        best = std::max(best,
                        overlap_epsilon(identity_circuit(1), phase_circuit(kPi / 2),
                                        random_state(1, rng)));
    CHECK(best <= opt.epsilon + 1e-4);
}

TEST_CASE("optimal_input rejects equal circuits, including up to global phase") {
    const Circuit h = single_gate_circuit(1, GateOp::named(Gate::H, {0}));
    CHECK_THROWS_AS(optimal_input(h, h), Error);
    // -H differs from H only by a global phase
    Mat minus_h = -circuit_unitary(h).entries;
    const Circuit mh = single_gate_circuit(1, GateOp::raw(minus_h, {0}));
    CHECK_THROWS_AS(optimal_input(h, mh), Error);
}

TEST_CASE("optimal_input dominates a probe grid over 20 random pairs") {
    std::mt19937_64 rng(1205);
    std::uniform_int_distribution<int> qubits_pick(1, 2);
    int done = 0;
    while (done < 20) {
        const int n = qubits_pick(rng);
        const Circuit c1 = random_circuit(n, 5, rng);
        const Circuit c2 = random_circuit(n, 5, rng);
        OptimalInput opt;
        try {
            opt = optimal_input(c1, c2, 11);
        } catch (const Error&) {
            continue;
        }
        double best = 0.0;
        for (int t = 0; t < 1000; ++t)
            best = std::max(best, overlap_epsilon(c1, c2, random_state(n, rng)));
        CHECK(opt.epsilon >= best - 1e-4);
        ++done;
    }
}

TEST_CASE("fault_detect separates a stuck gate from the reference") {
    const Circuit reference = single_gate_circuit(2, GateOp::named(Gate::CX, {0, 1}));
    Circuit faulty(2);
    faulty.push(GateOp::named(Gate::CX, {0, 1}));
    faulty.push(GateOp::named(Gate::X, {1}));

    CHECK(fault_detect(reference, faulty, reference) == FaultVerdict::FaultFree);
    CHECK(fault_detect(reference, faulty, faulty) == FaultVerdict::Faulty);
}

TEST_CASE("fault_detect refuses a fault model equal to the reference") {
    const Circuit reference = single_gate_circuit(2, GateOp::named(Gate::CX, {0, 1}));
    CHECK_THROWS_AS(fault_detect(reference, reference, reference), Error);
}
