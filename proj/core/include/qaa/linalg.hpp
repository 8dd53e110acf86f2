#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace qaa {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Default numeric tolerances. Operator identities and state norms are held to
// 1e-9; probability assertions to 1e-7. Products of up to a few hundred
// double-precision matrices stay well inside these.
inline constexpr double kOpTol = 1e-9;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kProbTol = 1e-7;

// Dense simulation is capped at this many qubits (2^14 amplitudes) unless the
// caller raises the budget explicitly.
inline constexpr int kDefaultQubitBudget = 14;

int qubit_budget();
void set_qubit_budget(int budget);

inline bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

// floor(log2(x)) for x a power of two.
int log2_exact(std::int64_t x);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

inline Mat dagger(const Mat& m) { return m.adjoint(); }

// Largest entrywise absolute difference.
double max_abs_diff(const Mat& a, const Mat& b);
double max_abs_diff(const Vec& a, const Vec& b);

}  // namespace qaa
