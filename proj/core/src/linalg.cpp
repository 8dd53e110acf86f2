#include "qaa/linalg.hpp"

#include <atomic>

#include "qaa/errors.hpp"

namespace qaa {

namespace {
std::atomic<int> g_qubit_budget{kDefaultQubitBudget};
}

int qubit_budget() { return g_qubit_budget.load(); }

void set_qubit_budget(int budget) {
    if (budget < 1) throw Error("qubit budget must be at least 1");
    g_qubit_budget.store(budget);
}

int log2_exact(std::int64_t x) {
    if (!is_power_of_two(x)) throw Error("dimension is not a power of two");
    int n = 0;
    while (x > 1) {
        x >>= 1;
        ++n;
    }
    return n;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix shapes differ");
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vector lengths differ");
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qaa
