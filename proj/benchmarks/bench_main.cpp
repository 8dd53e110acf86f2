#include <benchmark/benchmark.h>

#include <numbers>
#include <qaa/qaa.hpp>
#include <random>

using namespace qaa;

namespace {

Circuit layered_circuit(int qubits, int layers, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Circuit c(qubits);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < qubits; ++q) c.push(GateOp::named(Gate::RY, {q}, angle(rng)));
        for (int q = 0; q + 1 < qubits; q += 2) c.push(GateOp::named(Gate::CX, {q, q + 1}));
    }
    return c;
}

void BM_apply_layered(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit c = layered_circuit(n, 4, 7);
    const StateVector in = StateVector::zero(n);
    for (auto _ : state) {
        auto out = apply_circuit(c, in);
        benchmark::DoNotOptimize(out.amplitudes.data());
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_apply_layered)->DenseRange(4, 12, 2)->Complexity();

void BM_grover_iterator_probability(benchmark::State& state) {
    const QuantumSystem qs = engineered_system(0.3, static_cast<int>(state.range(0)) - 1);
    const PhasePair phases{std::numbers::pi, std::numbers::pi};
    for (auto _ : state) {
        const QuantumSystem g(qs.input, grover_iterator(qs, phases), qs.measurement);
        benchmark::DoNotOptimize(outcome_probability(g).p_E);
    }
}
BENCHMARK(BM_grover_iterator_probability)->DenseRange(1, 5, 2);

void BM_build_perfect_distinguisher(benchmark::State& state) {
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto plan = build_perfect_distinguisher(SeparablePromise(0.0, eps));
        benchmark::DoNotOptimize(plan.query_count());
    }
}
BENCHMARK(BM_build_perfect_distinguisher)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

void BM_apply_plan_two_sided(benchmark::State& state) {
    const AmplificationPlan plan =
        build_perfect_distinguisher(SeparablePromise(1.0 / 3.0, 2.0 / 3.0));
    const QuantumSystem qs = engineered_system(2.0 / 3.0);
    for (auto _ : state) {
        auto out = apply_plan(plan, qs);
        benchmark::DoNotOptimize(outcome_probability(out).p_E);
    }
}
BENCHMARK(BM_apply_plan_two_sided);

void BM_optimal_input(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit c1 = layered_circuit(n, 3, 11);
    const Circuit c2 = layered_circuit(n, 3, 13);
    for (auto _ : state) {
        auto best = optimal_input(c1, c2, 17);
        benchmark::DoNotOptimize(best.epsilon);
    }
}
BENCHMARK(BM_optimal_input)->DenseRange(1, 3, 1);

}  // namespace

BENCHMARK_MAIN();
