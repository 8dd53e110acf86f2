#pragma once

#include <optional>
#include <string>

#include "qaa/derand.hpp"
#include "qaa/errors.hpp"
#include "qaa/system.hpp"

namespace qaa {

struct ParseError : Error {
    using Error::Error;
};

// Declarative problem document. Numeric leaves are decimal strings with up to
// 17 significant digits so files round-trip doubles exactly; complex entries
// are [re, im] pairs.
struct ProblemFile {
    std::optional<int> qubits;
    std::optional<StateVector> input;
    std::optional<Circuit> circuit;
    std::optional<Measurement2> measurement;
    std::optional<SeparablePromise> promise;

    std::optional<Circuit> circuit_1;
    std::optional<Circuit> circuit_2;
    std::optional<StateVector> probe;
    std::optional<Circuit> device;

    std::optional<LanguageFixture> fixture;
    std::optional<OracleFixture> oracle_fixture;

    // Assembled from input/circuit/measurement; nullopt when any is missing.
    std::optional<QuantumSystem> system() const;
};

ProblemFile parse_problem_text(const std::string& text, const std::string& origin = "<string>");
ProblemFile parse_problem_file(const std::string& path);

std::string serialize_problem(const ProblemFile& pf);

// Single-system document (input + circuit + measurement).
ProblemFile problem_for_system(const QuantumSystem& qs);

// Decimal with up to 17 significant digits; parses back to the same bits.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace qaa
