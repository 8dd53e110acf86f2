#include "qaa/distinguish.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qaa/errors.hpp"
#include "qaa/validate.hpp"

namespace qaa {

double overlap_epsilon(const Circuit& c1, const Circuit& c2, const StateVector& probe) {
    if (c1.qubit_count() != c2.qubit_count() || c1.qubit_count() != probe.qubit_count)
        throw DimensionError("circuits and probe disagree on qubit count");
    const StateVector psi1 = apply_circuit(c1, probe);
    const StateVector psi2 = apply_circuit(c2, probe);
    return 1.0 - std::norm(psi1.inner(psi2));
}

DistinguisherPlan build_circuit_distinguisher(const Circuit& c1, const Circuit& c2,
                                              const StateVector& probe) {
    const double eps = overlap_epsilon(c1, c2, probe);
    if (eps <= 1e-12)
        throw Error("circuits are identical on this probe; try optimal_input");

    DistinguisherPlan plan;
    plan.circuit_1 = c1;
    plan.circuit_2 = c2;
    plan.probe = probe;
    plan.epsilon = eps;
    const StateVector psi1 = apply_circuit(c1, probe);
    plan.measurement = Measurement2(Projector::onto(psi1).complement());
    plan.plan = build_perfect_distinguisher(SeparablePromise(0.0, eps));
    plan.materialized = materialize_plan(plan.plan, probe, plan.measurement);
    return plan;
}

Verdict decide(const DistinguisherPlan& plan, const Circuit& blackbox, double tol) {
    if (blackbox.qubit_count() != plan.probe.qubit_count)
        throw DimensionError("black box does not match the probe register");
    const Circuit bound = plan.materialized.circuit.bound(kCallSlot, blackbox);
    const QuantumSystem qs(plan.materialized.input, bound, plan.materialized.measurement);
    const double p = outcome_probability(qs).p_E;
    // The plan sends the separated side (C2) to E-always and C1 to E-never.
    if (std::abs(p - 1.0) <= tol) return Verdict::IsC2;
    if (std::abs(p) <= tol) return Verdict::IsC1;
    throw PromiseViolation("black box is neither candidate: amplified p_E = " + std::to_string(p),
                           p);
}

namespace {

std::vector<double> project_to_simplex(std::vector<double> x) {
    std::vector<double> u = x;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    int rho = 0;
    for (size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            rho = static_cast<int>(j + 1);
            tau = t;
        }
    }
    (void)rho;
    for (auto& v : x) v = std::max(v - tau, 0.0);
    return x;
}

}  // namespace

double phase_objective(const std::vector<double>& phases, const std::vector<double>& weights) {
    if (phases.size() != weights.size()) throw DimensionError("phase/weight size mismatch");
    // f(c) = |sum_j c_j e^{i theta_j}|^2
    Complex sum{0.0, 0.0};
    for (size_t j = 0; j < phases.size(); ++j) sum += weights[j] * std::polar(1.0, phases[j]);
    return std::norm(sum);
}

namespace {

// Minimize c^T G c over the simplex, G_{jk} = cos(theta_j - theta_k). G is
// the Gram matrix of unit vectors, so the objective is convex; projected
// gradient descent with restarts suffices, and one or two distinct phases
// have closed forms.
std::vector<double> minimize_weights(const std::vector<double>& phases, std::uint64_t seed) {
    const int k = static_cast<int>(phases.size());
    if (k == 1) return {1.0};
    if (k == 2) return {0.5, 0.5};

    Eigen::MatrixXd gram(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) gram(a, b) = std::cos(phases[a] - phases[b]);

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);

    std::vector<double> best;
    double best_f = std::numeric_limits<double>::infinity();
    const int restarts = 20;
    const double step = 1.0 / (2.0 * k);  // eigenvalues of G lie in [0, k]

    for (int r = 0; r < restarts; ++r) {
        std::vector<double> c(k, 1.0 / k);
        if (r > 0) {
            double total = 0.0;
            for (auto& v : c) total += (v = expo(rng));
            for (auto& v : c) v /= total;
        }
        double f_prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 5000; ++it) {
            Eigen::Map<Eigen::VectorXd> cv(c.data(), k);
            Eigen::VectorXd grad = 2.0 * gram * cv;
            std::vector<double> next(k);
            for (int j = 0; j < k; ++j) next[j] = c[j] - step * grad(j);
            c = project_to_simplex(std::move(next));
            const double f = phase_objective(phases, c);
            if (std::abs(f_prev - f) < 1e-15) break;
            f_prev = f;
        }
        const double f = phase_objective(phases, c);
        if (f < best_f) {
            best_f = f;
            best = c;
        }
    }
    return best;
}

}  // namespace

EigenPhaseProblem eigenphase_problem(const Circuit& c1, const Circuit& c2,
                                     std::uint64_t seed) {
    if (c1.qubit_count() != c2.qubit_count())
        throw DimensionError("circuits disagree on qubit count");
    const Mat s = circuit_unitary(c1).entries.adjoint() * circuit_unitary(c2).entries;
    require_valid(UnitaryMatrix(s));

    Eigen::ComplexEigenSolver<Mat> solver(s);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");

    struct Entry {
        Complex value;
        Eigen::Index col;
    };
    std::vector<Entry> entries;
    for (Eigen::Index j = 0; j < s.rows(); ++j) {
        const Complex lambda = solver.eigenvalues()(j);
        if (std::abs(std::abs(lambda) - 1.0) > kOpTol)
            throw Error("eigenvalue off the unit circle; product is not unitary");
        entries.push_back({lambda, j});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::arg(a.value) < std::arg(b.value); });

    // Pool degenerate eigenphases: split weights on equal phases are
    // equivalent under the objective and destabilize the optimizer.
    EigenPhaseProblem problem;
    std::vector<Eigen::Index> representatives;
    for (const auto& e : entries) {
        if (!problem.phases.empty() &&
            std::abs(e.value - std::polar(1.0, problem.phases.back())) < 1e-9)
            continue;
        problem.phases.push_back(std::arg(e.value));
        representatives.push_back(e.col);
    }
    // Phases near ±pi sort to opposite ends but sit together on the circle.
    if (problem.phases.size() >= 2 &&
        std::abs(std::polar(1.0, problem.phases.front()) -
                 std::polar(1.0, problem.phases.back())) < 1e-9) {
        problem.phases.pop_back();
        representatives.pop_back();
    }
    problem.eigenvectors.resize(s.rows(), static_cast<Eigen::Index>(representatives.size()));
    for (size_t j = 0; j < representatives.size(); ++j) {
        Vec v = solver.eigenvectors().col(representatives[j]);
        problem.eigenvectors.col(static_cast<Eigen::Index>(j)) = v / v.norm();
    }
    problem.weights = minimize_weights(problem.phases, seed);
    return problem;
}

OptimalInput optimal_input(const Circuit& c1, const Circuit& c2, std::uint64_t seed) {
    const EigenPhaseProblem problem = eigenphase_problem(c1, c2, seed);
    if (problem.phases.size() < 2)
        throw Error("circuits are indistinguishable (equal up to a global phase)");

    Vec phi = Vec::Zero(problem.eigenvectors.rows());
    for (size_t j = 0; j < problem.weights.size(); ++j)
        phi += std::sqrt(problem.weights[j]) * problem.eigenvectors.col(j);
    phi /= phi.norm();

    OptimalInput out;
    out.probe = StateVector(c1.qubit_count(), std::move(phi));
    out.epsilon = 1.0 - phase_objective(problem.phases, problem.weights);
    if (out.epsilon <= 1e-9)
        throw Error("circuits are indistinguishable (equal up to a global phase)");
    return out;
}

FaultVerdict fault_detect(const Circuit& reference, const Circuit& fault_model,
                          const Circuit& device, std::uint64_t seed) {
    const OptimalInput probe = optimal_input(reference, fault_model, seed);
    const DistinguisherPlan plan =
        build_circuit_distinguisher(reference, fault_model, probe.probe);
    return decide(plan, device) == Verdict::IsC1 ? FaultVerdict::FaultFree : FaultVerdict::Faulty;
}

}  // namespace qaa
