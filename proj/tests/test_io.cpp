#include <doctest.h>

#include "test_util.hpp"

using namespace qaa;
using namespace qaa::testing;

namespace {
const char* kCoinFile = R"({
  "qubits": 1,
  "input": {"basis": "0"},
  "circuit": [
    {"gate": "ry", "targets": [0], "angle": "1.9106332362490186"}
  ],
  "measurement": {"qubit": 0, "outcome": 1},
  "promise": {"delta": "0.33333333333333331", "epsilon": "0.66666666666666663"}
})";
}

TEST_CASE("parse_problem_text reads a system with a promise") {
    const ProblemFile pf = parse_problem_text(kCoinFile, "coin.qs");
    REQUIRE(pf.system().has_value());
    REQUIRE(pf.promise.has_value());
    CHECK(pf.promise->delta == doctest::Approx(1.0 / 3.0));
    const double p = outcome_probability(*pf.system()).p_E;
    CHECK(p == doctest::Approx(2.0 / 3.0).epsilon(1e-9));  // ry(2*asin(sqrt(2/3)))
}

TEST_CASE("parse errors carry the origin and a reason") {
    try {
        parse_problem_text("{ not json", "broken.qs");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("broken.qs") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem_text(R"({"qubits": 1, "circuit": [{"gate": "nope", "targets": [0]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem_text(R"({"circuit": [{"gate": "x", "targets": [0]}]})"),
                    ParseError);  // qubits missing
}

TEST_CASE("format_double round-trips doubles bit-exactly") {
    std::mt19937_64 rng(1301);
    std::uniform_real_distribution<double> unit(-10.0, 10.0);
    for (int t = 0; t < 1000; ++t) {
        const double v = unit(rng) * std::pow(10.0, int(rng() % 20) - 10);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS_AS(parse_double("12x"), ParseError);
}

TEST_CASE("an emitted problem re-parses to identical values") {
    std::mt19937_64 rng(1302);
    for (int t = 0; t < 10; ++t) {
        const int n = 1 + int(rng() % 3);
        Circuit c = random_circuit(n, 6, rng);
        c.push(GateOp::call("C", {0}));
        c.push(GateOp::named(Gate::H, {0}).adjointed());
        const QuantumSystem qs(random_state(n, rng), c,
                               Measurement2(random_projector(1 << n, 1, rng)));
        ProblemFile pf = problem_for_system(qs);
        pf.promise = SeparablePromise(0.25, 0.75);

        const std::string text = serialize_problem(pf);
        const ProblemFile back = parse_problem_text(text);

        REQUIRE(back.system().has_value());
        CHECK(back.qubits == n);
        CHECK(max_abs_diff(back.input->amplitudes, qs.input.amplitudes) == 0.0);
        CHECK(back.circuit->structure() == qs.circuit.structure());
        CHECK(max_abs_diff(back.measurement->projector_E.entries,
                           qs.measurement.projector_E.entries) == 0.0);
        CHECK(back.promise->delta == 0.25);

        // serialization is a fixed point after one round
        CHECK(serialize_problem(back) == text);
    }
}

TEST_CASE("single-qubit basis measurements use the compact form") {
    const QuantumSystem qs = engineered_system(0.5);
    const std::string text = serialize_problem(problem_for_system(qs));
    CHECK(text.find("\"qubit\"") != std::string::npos);
    const ProblemFile back = parse_problem_text(text);
    CHECK(back.measurement->targets == std::vector<int>{0});
}

TEST_CASE("fixtures round-trip through the file format") {
    ProblemFile pf;
    pf.fixture = language_fixture(1, "01", SeparablePromise(0.0, 0.5));
    const ProblemFile back = parse_problem_text(serialize_problem(pf));
    REQUIRE(back.fixture.has_value());
    CHECK(back.fixture->n == 1);
    CHECK(back.fixture->m == 1);
    CHECK(back.fixture->members == std::vector<bool>{false, true});
    CHECK(back.fixture->circuit.structure() == pf.fixture->circuit.structure());
    CHECK_NOTHROW(check_fixture(*back.fixture));
}

TEST_CASE("raw-matrix gates survive the round trip entrywise") {
    std::mt19937_64 rng(1303);
    Circuit c(2);
    c.push(GateOp::raw(random_unitary(4, rng), {0, 1}));
    ProblemFile pf;
    pf.qubits = 2;
    pf.circuit = c;
    const ProblemFile back = parse_problem_text(serialize_problem(pf));
    CHECK(max_abs_diff(*back.circuit->ops()[0].matrix, *c.ops()[0].matrix) == 0.0);
}
