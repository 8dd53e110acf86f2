// Acceptance suite: end-to-end checks of the library's headline contracts,
// one line per criterion. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace qaa;
using namespace qaa::testing;

namespace {

const double kPi = std::numbers::pi;
int g_failures = 0;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    try {
        std::string detail;
        const bool ok = fn(detail);
        report(id, name, ok, detail);
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

double simulate_optimal(double p) {
    return outcome_probability(optimal_iterator(engineered_system(p), p)).p_E;
}

bool table_reproduction(std::string& detail) {
    double worst = 0.0;
    for (double p : {0.5, 0.4, 0.3, 0.25})
        worst = std::max(worst, std::abs(simulate_optimal(p) - 1.0));
    for (double p : {0.2, 0.125, 0.05}) {
        const double want = p * std::pow(3.0 - 4.0 * p, 2);
        worst = std::max(worst, std::abs(simulate_optimal(p) - want));
    }
    detail = "max |p' - expected| = " + sci(worst);
    return worst < 1e-7;
}

bool gain_oracle(std::string& detail) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> prob(0.05, 0.95);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const double p = prob(rng);
        const PhasePair phases{angle(rng), angle(rng)};
        const QuantumSystem qs = engineered_system(p, t % 4 == 0 ? 1 : 0);
        const QuantumSystem g(qs.input, grover_iterator(qs, phases), qs.measurement);
        const double ratio = outcome_probability(g).p_E / p;
        worst = std::max(worst, std::abs(ratio - delta_gain(phases, p)));
    }
    detail = "max |ratio - formula| = " + sci(worst);
    return worst < 1e-9;
}

bool end_to_end_promises(std::string& detail) {
    const std::vector<SeparablePromise> promises{
        SeparablePromise(0.0, 0.5), SeparablePromise(1.0 / 3.0, 2.0 / 3.0),
        SeparablePromise(0.1, 0.2), SeparablePromise(0.0, 0.01)};
    double worst = 0.0;
    for (const auto& promise : promises) {
        const AmplificationPlan plan = build_perfect_distinguisher(promise);
        const double hi = outcome_probability(apply_plan(plan, engineered_system(promise.epsilon))).p_E;
        const double lo = outcome_probability(apply_plan(plan, engineered_system(promise.delta))).p_E;
        worst = std::max({worst, std::abs(hi - 1.0), std::abs(lo)});
    }

    const AmplificationPlan third = build_perfect_distinguisher(SeparablePromise(1.0 / 3.0, 2.0 / 3.0));
    const double expected_low[] = {1.0 / 3.0, 0.25, 0.8125, 0.1875, 0.94921875, 0.5, 1.0, 0.0};
    if (third.ledger.points.size() != 8) {
        detail = "unexpected (1/3, 2/3) stage count";
        return false;
    }
    const auto low_run = apply_plan_verified(third, engineered_system(1.0 / 3.0));
    for (int i = 0; i < 8; ++i) {
        worst = std::max(worst, std::abs(third.ledger.points[i].second - expected_low[i]));
        worst = std::max(worst, std::abs(low_run.trace[i].simulated_p - expected_low[i]));
    }
    if (third.query_count() != 27) {
        detail = "query count " + std::to_string(third.query_count()) + " != 27";
        return false;
    }
    detail = "max deviation = " + sci(worst) + ", 27 calls";
    return worst < 1e-7;
}

bool flat_iterator_equivalence(std::string& detail) {
    std::mt19937_64 rng(43);
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const QuantumSystem qs(random_state(2, rng), random_circuit(2, 5, rng),
                               Measurement2::qubit_outcome(2, 0, 1));
        worst = std::max(worst, iterative_equivalent(qs, k).deviation);
    }
    detail = "max ||recursive - flat||_max = " + sci(worst);
    return worst < 1e-9;
}

bool schedule_and_scaling(std::string& detail) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> unit(1e-6, 0.2499);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double eps = unit(rng);
        const Schedule s = amplification_schedule(eps);
        double angle = s.beta;
        for (int j = 0; j < s.k(); ++j) {
            angle *= 3.0;
            worst = std::max(worst, std::abs(s.epsilons[j] - std::pow(std::sin(angle), 2)));
        }
    }
    if (worst >= 1e-12) {
        detail = "closed form drift " + sci(worst);
        return false;
    }

    std::vector<double> counts;
    for (double eps : {1e-2, 1e-3, 1e-4})
        counts.push_back(static_cast<double>(
            build_perfect_distinguisher(SeparablePromise(0.0, eps)).query_count()));
    const double root10 = std::sqrt(10.0);
    for (size_t i = 0; i + 1 < counts.size(); ++i) {
        const double ratio = counts[i + 1] / counts[i];
        if (ratio < 0.8 * root10 || ratio > 1.2 * root10) {
            detail = "count ratio " + sci(ratio) + " outside sqrt(10) +/- 20%";
            return false;
        }
    }
    detail = "closed form <= " + sci(worst) + "; counts " +
             std::to_string(int(counts[0])) + "/" + std::to_string(int(counts[1])) + "/" +
             std::to_string(int(counts[2]));
    return true;
}

bool uniform_reflection_families(std::string& detail) {
    Vec plus(2), minus(2);
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    minus << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    const OrthonormalFamily hadamard({StateVector(1, plus), StateVector(1, minus)});
    std::vector<StateVector> basis_states;
    for (int j = 0; j < 4; ++j) basis_states.push_back(StateVector::basis(2, j));
    const OrthonormalFamily computational(std::move(basis_states));

    double worst = 0.0;
    for (int g = 0; g <= 8; ++g) {
        const double theta = kPi * g / 8.0;
        worst = std::max(worst, verify_uniform(hadamard, basis_map(hadamard), theta));
        worst = std::max(worst, verify_uniform(computational, basis_map(computational), theta));
    }
    if (worst >= 1e-9) {
        detail = "reflection deviation " + sci(worst);
        return false;
    }

    // Transformed circuits are shared (family route) or differ only in what
    // the oracle slot binds to (oracle route).
    const LanguageFixture fixture = language_fixture(2, "0110", SeparablePromise(0.0, 0.5));
    const FamilyDerandomization fam = derandomize_family(fixture);
    const bool family_uniform = fam.circuit.structure() == fam.uniform.circuit.structure() &&
                                fam.circuit.count_slot_sites(kCallSlot) == fam.plan.query_count();

    OracleFixture of;
    of.qubits = 2;
    of.answer_qubit = 1;
    Mat ch = Mat::Identity(4, 4);
    ch(2, 2) = ch(3, 3) = 1.0 / std::numbers::sqrt2;
    ch(2, 3) = 1.0 / std::numbers::sqrt2;
    ch(3, 2) = -1.0 / std::numbers::sqrt2;
    Circuit t(2);
    t.push(GateOp::call(kOracleSlot, {1}));
    t.push(GateOp::raw(ch, {1, 0}));
    of.template_circuit = std::move(t);
    of.measurement = Measurement2::qubit_outcome(2, 0, 1);
    of.truth = {false, true};
    const OracleDerandomization od = derandomize_oracle(of, SeparablePromise(0.0, 0.5));
    const bool oracle_uniform =
        od.template_bound.bound(kOracleSlot, of.oracle_for(0)).structure() ==
        od.template_bound.bound(kOracleSlot, of.oracle_for(1)).structure();

    detail = "reflection deviation " + sci(worst);
    return family_uniform && oracle_uniform;
}

bool distinguishing_random_pairs(std::string& detail) {
    std::mt19937_64 rng(45);
    std::uniform_int_distribution<int> qubits_pick(1, 3);
    int done = 0, wrong = 0;
    while (done < 50) {
        const int n = qubits_pick(rng);
        const Circuit c1 = random_circuit(n, 6, rng);
        const Circuit c2 = random_circuit(n, 6, rng);
        const StateVector probe = random_state(n, rng);
        if (overlap_epsilon(c1, c2, probe) < 0.05) continue;
        const DistinguisherPlan plan = build_circuit_distinguisher(c1, c2, probe);
        if (decide(plan, c1) != Verdict::IsC1) ++wrong;
        if (decide(plan, c2) != Verdict::IsC2) ++wrong;
        ++done;
    }
    if (wrong) {
        detail = std::to_string(wrong) + " misclassifications";
        return false;
    }

    int dominated = 0;
    for (int t = 0; t < 20;) {
        const int n = 1 + int(rng() % 2);
        const Circuit c1 = random_circuit(n, 5, rng);
        const Circuit c2 = random_circuit(n, 5, rng);
        OptimalInput opt;
        try {
            opt = optimal_input(c1, c2, 5);
        } catch (const Error&) {
            continue;
        }
        double best = 0.0;
        for (int g = 0; g < 1000; ++g)
            best = std::max(best, overlap_epsilon(c1, c2, random_state(n, rng)));
        if (opt.epsilon >= best - 1e-4) ++dominated;
        ++t;
    }

    const Circuit quarter = single_gate_circuit(1, GateOp::named(Gate::Phase, {0}, kPi / 2));
    const OptimalInput opt = optimal_input(identity_circuit(1), quarter);
    const bool quarter_ok = std::abs(opt.epsilon - 0.5) < 1e-9;

    detail = "0 misclassifications; " + std::to_string(dominated) +
             "/20 grids dominated; quarter-phase eps* = " + format_double(opt.epsilon);
    return dominated == 20 && quarter_ok;
}

bool explicit_half_error_circuit(std::string& detail) {
    Vec col0 = Vec::Zero(4), col2 = Vec::Zero(4);
    col0(0) = 1.0;
    col2(1) = col2(3) = 1.0 / std::numbers::sqrt2;
    LanguageFixture fixture;
    fixture.n = 1;
    fixture.m = 1;
    fixture.members = {false, true};
    fixture.promise = SeparablePromise(0.0, 0.5);
    fixture.circuit =
        single_gate_circuit(2, GateOp::raw(complete_columns(4, {{0, col0}, {2, col2}}), {0, 1}));

    const HalfErrorCircuit hc = derandomize_half(fixture);
    const StateVector out0 = apply_circuit(hc.circuit, hc.input_for(0));
    const StateVector out1 = apply_circuit(hc.circuit, hc.input_for(1));

    Vec want0 = Vec::Zero(16), want1 = Vec::Zero(16);
    want0(0) = Complex{0.0, 1.0};                                  // i |000>|0>
    want1(14) = (Complex{0.0, 1.0} - 1.0) / std::numbers::sqrt2;   // (i-1)|111>|0>
    const double state_dev = std::max(max_abs_diff(out0.amplitudes, want0),
                                      max_abs_diff(out1.amplitudes, want1));

    const double p0 = outcome_probability({hc.input_for(0), hc.circuit, hc.measurement()}).p_E;
    const double p1 = outcome_probability({hc.input_for(1), hc.circuit, hc.measurement()}).p_E;
    const double prob_dev = std::max(std::abs(p0), std::abs(p1 - 1.0));

    detail = "state deviation " + sci(state_dev) + ", probability deviation " +
             sci(prob_dev);
    return state_dev < 1e-9 && prob_dev < 1e-9;
}

bool property_suite(std::string& detail) {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> unit(0.02, 1.0);

    // zero preservation: amplification stages keep an exact zero; label swaps
    // move it between the exact extremes only
    for (int t = 0; t < 10; ++t) {
        const AmplificationPlan plan =
            build_perfect_distinguisher(SeparablePromise(0.0, unit(rng)));
        QuantumSystem cur = engineered_system(0.0);
        for (const auto& stage : plan.stages) {
            cur = plan_step(cur, stage);
            const double p = outcome_probability(cur).p_E;
            if (std::min(p, 1.0 - p) > 1e-12) {
                detail = "zero side acquired probability " + sci(p);
                return false;
            }
        }
        if (outcome_probability(cur).p_E > 1e-12) {
            detail = "zero side did not end at 0";
            return false;
        }
    }

    // validity of constructed operators
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int t = 0; t < 25; ++t) {
        if (!validate(phase_on_projector(random_projector(8, 1 + int(rng() % 3), rng), angle(rng))).ok()) {
            detail = "phase_on_projector produced a non-unitary";
            return false;
        }
    }
    for (double eps : {0.51, 2.0 / 3.0, 0.94921875, 1.0})
        if (!validate(halving_projector(eps)).ok()) {
            detail = "halving projector invalid at " + std::to_string(eps);
            return false;
        }
    const AmplificationPlan plan = build_perfect_distinguisher(SeparablePromise(1.0 / 3.0, 2.0 / 3.0));
    const MaterializedPlan mat = materialize_plan(plan, engineered_system(2.0 / 3.0).input,
                                                  engineered_system(2.0 / 3.0).measurement);
    for (const auto& op : mat.circuit.ops())
        if (op.kind == GateOp::Kind::Raw && !validate(UnitaryMatrix(*op.matrix)).ok()) {
            detail = "materialized stage gate is not unitary";
            return false;
        }

    // adjoint round trips
    for (int t = 0; t < 10; ++t) {
        const Circuit c = random_circuit(3, 8, rng);
        const StateVector s = random_state(3, rng);
        const StateVector back = apply_circuit(circuit_adjoint(c), apply_circuit(c, s));
        if (max_abs_diff(back.amplitudes, s.amplitudes) > 1e-12) {
            detail = "adjoint round trip drifted";
            return false;
        }
    }

    // fanout self-inverse
    for (int m = 1; m <= 4; ++m) {
        const UnitaryMatrix f = fanout(m);
        if (max_abs_diff(Mat(f.entries * f.entries), Mat::Identity(f.dim(), f.dim())) > 1e-12) {
            detail = "fanout(" + std::to_string(m) + ") not self-inverse";
            return false;
        }
    }
    detail = "zero preservation, operator validity, adjoint round trips, fanout";
    return true;
}

}  // namespace

int main() {
    criterion(1, "optimal iterator reproduces the tabulated optima", table_reproduction);
    criterion(2, "iterator gain formula vs. 200 simulated triples", gain_oracle);
    criterion(3, "perfect distinguishers across four promises, (1/3, 2/3) ledger",
              end_to_end_promises);
    criterion(4, "recursive stages equal flat iterator powers (k = 1..4)",
              flat_iterator_equivalence);
    criterion(5, "schedule closed form and O(1/sqrt(eps)) call scaling", schedule_and_scaling);
    criterion(6, "uniform reflection matches direct reflection; circuits uniform",
              uniform_reflection_families);
    criterion(7, "50 random pairs distinguished; optimal probe dominates grids",
              distinguishing_random_pairs);
    criterion(8, "explicit one-sided-half circuit decides deterministically",
              explicit_half_error_circuit);
    criterion(9, "property suite: zero preservation, validity, round trips",
              property_suite);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
