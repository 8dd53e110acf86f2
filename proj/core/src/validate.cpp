#include "qaa/validate.hpp"

#include <cmath>
#include <sstream>

#include "qaa/errors.hpp"

namespace qaa {

namespace {

bool all_finite(const Mat& m) { return m.allFinite(); }

void check_dim(const Mat& m, ValidationReport& report) {
    if (m.rows() != m.cols()) {
        report.violations.push_back({"matrix is not square", 0.0});
        return;
    }
    if (!is_power_of_two(m.rows()))
        report.violations.push_back({"dimension is not a power of two", 0.0});
}

}  // namespace

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].what << " (deviation " << violations[i].deviation << ")";
    }
    return os.str();
}

ValidationReport validate(const UnitaryMatrix& u, double tol) {
    ValidationReport report;
    check_dim(u.entries, report);
    if (!report.ok()) return report;
    if (!all_finite(u.entries)) {
        report.violations.push_back({"non-finite entry", 0.0});
        return report;
    }
    const Mat gram = u.entries.adjoint() * u.entries;
    const double dev = (gram - Mat::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff();
    if (dev > tol) report.violations.push_back({"not unitary: max |U†U - I|", dev});
    return report;
}

ValidationReport validate(const Projector& p, double tol) {
    ValidationReport report;
    check_dim(p.entries, report);
    if (!report.ok()) return report;
    if (!all_finite(p.entries)) {
        report.violations.push_back({"non-finite entry", 0.0});
        return report;
    }
    const double herm = (p.entries - p.entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) report.violations.push_back({"not Hermitian: max |P - P†|", herm});
    const double idem = (p.entries * p.entries - p.entries).cwiseAbs().maxCoeff();
    if (idem > tol) report.violations.push_back({"not idempotent: max |P² - P|", idem});
    return report;
}

ValidationReport validate(const StateVector& s, double tol) {
    ValidationReport report;
    if (!s.amplitudes.allFinite()) {
        report.violations.push_back({"non-finite amplitude", 0.0});
        return report;
    }
    const double norm_sq = s.norm_sq();
    if (std::abs(norm_sq - 1.0) > tol)
        report.violations.push_back({"norm violation: ||psi||^2", norm_sq});
    return report;
}

namespace {
template <typename T>
void require_impl(const T& value, double tol, const char* what) {
    auto report = validate(value, tol);
    if (!report.ok()) throw ValidationError(std::string(what) + ": " + report.to_string());
}
}  // namespace

void require_valid(const UnitaryMatrix& u, double tol) { require_impl(u, tol, "unitary"); }
void require_valid(const Projector& p, double tol) { require_impl(p, tol, "projector"); }
void require_valid(const StateVector& s, double tol) { require_impl(s, tol, "state"); }

}  // namespace qaa
