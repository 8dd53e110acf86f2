#include "qaa/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

namespace qaa {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("not a decimal number: '" + s + "'");
    return v;
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ParseError(origin + ": " + what);
}

double number_from(const json& j, const std::string& origin, const char* what) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    if (j.is_number()) return j.get<double>();
    fail(origin, std::string(what) + " must be a decimal string or number");
}

json number_to(double v) { return json(format_double(v)); }

json complex_to(const Complex& c) { return json::array({number_to(c.real()), number_to(c.imag())}); }

Complex complex_from(const json& j, const std::string& origin) {
    if (!j.is_array() || j.size() != 2) fail(origin, "complex entries are [re, im] pairs");
    return Complex{number_from(j[0], origin, "re"), number_from(j[1], origin, "im")};
}

json matrix_to(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from(const json& j, const std::string& origin) {
    if (!j.is_array() || j.empty()) fail(origin, "matrix must be a non-empty array of rows");
    const auto rows = j.size();
    Mat m(rows, rows);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != rows)
            fail(origin, "matrix must be square (row " + std::to_string(r) + ")");
        for (size_t c = 0; c < rows; ++c) m(r, c) = complex_from(j[r][c], origin);
    }
    return m;
}

std::vector<int> targets_from(const json& j, const std::string& origin) {
    if (!j.is_array() || j.empty()) fail(origin, "'targets' must be a non-empty array");
    std::vector<int> out;
    for (const auto& t : j) {
        if (!t.is_number_integer()) fail(origin, "targets must be integers");
        out.push_back(t.get<int>());
    }
    return out;
}

json op_to(const GateOp& op) {
    json j;
    switch (op.kind) {
        case GateOp::Kind::Named:
            j["gate"] = gate_name(op.gate);
            if (gate_has_angle(op.gate)) j["angle"] = number_to(op.angle);
            break;
        case GateOp::Kind::Raw: j["matrix"] = matrix_to(*op.matrix); break;
        case GateOp::Kind::Slot: j["slot"] = op.slot; break;
    }
    j["targets"] = op.targets;
    if (op.adjoint) j["adjoint"] = true;
    return j;
}

GateOp op_from(const json& j, const std::string& origin) {
    if (!j.is_object()) fail(origin, "circuit ops must be objects");
    if (!j.contains("targets")) fail(origin, "op is missing 'targets'");
    std::vector<int> targets = targets_from(j.at("targets"), origin);

    GateOp op;
    if (j.contains("gate")) {
        const std::string name = j.at("gate").get<std::string>();
        const auto gate = gate_from_name(name);
        if (!gate) fail(origin, "unknown gate '" + name + "'");
        double angle = 0.0;
        if (gate_has_angle(*gate)) {
            if (!j.contains("angle")) fail(origin, "gate '" + name + "' needs an 'angle'");
            angle = number_from(j.at("angle"), origin, "angle");
        }
        op = GateOp::named(*gate, std::move(targets), angle);
    } else if (j.contains("matrix")) {
        op = GateOp::raw(matrix_from(j.at("matrix"), origin), std::move(targets));
    } else if (j.contains("slot")) {
        op = GateOp::call(j.at("slot").get<std::string>(), std::move(targets));
    } else {
        fail(origin, "op needs one of 'gate', 'matrix', 'slot'");
    }
    if (j.value("adjoint", false)) op = op.adjointed();
    return op;
}

json circuit_to(const Circuit& c) {
    json ops = json::array();
    for (const auto& op : c.ops()) ops.push_back(op_to(op));
    return ops;
}

Circuit circuit_from(const json& j, int qubits, const std::string& origin) {
    if (!j.is_array()) fail(origin, "a circuit is an array of ops");
    Circuit c(qubits);
    for (const auto& op : j) c.push(op_from(op, origin));
    return c;
}

json state_to(const StateVector& s) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
        amps.push_back(complex_to(s.amplitudes(i)));
    return json{{"amplitudes", std::move(amps)}};
}

StateVector state_from(const json& j, std::optional<int> qubits, const std::string& origin) {
    if (!j.is_object()) fail(origin, "a state is an object with 'basis' or 'amplitudes'");
    if (j.contains("basis")) {
        const std::string bits = j.at("basis").get<std::string>();
        if (qubits && static_cast<int>(bits.size()) != *qubits)
            fail(origin, "basis label length does not match 'qubits'");
        return StateVector::basis(bits);
    }
    if (j.contains("amplitudes")) {
        const auto& arr = j.at("amplitudes");
        if (!arr.is_array() || !is_power_of_two(static_cast<std::int64_t>(arr.size())))
            fail(origin, "'amplitudes' length must be a power of two");
        Vec v(arr.size());
        for (size_t i = 0; i < arr.size(); ++i) v(i) = complex_from(arr[i], origin);
        const int n = log2_exact(static_cast<std::int64_t>(arr.size()));
        if (qubits && n != *qubits) fail(origin, "'amplitudes' length does not match 'qubits'");
        return StateVector(n, std::move(v));
    }
    fail(origin, "a state needs 'basis' or 'amplitudes'");
}

json measurement_to(const Measurement2& m) {
    // Compact form for a single-qubit basis measurement.
    if (m.targets.size() == 1 && m.projector_E.dim() == 2) {
        const Mat& p = m.projector_E.entries;
        for (int outcome = 0; outcome < 2; ++outcome) {
            Mat expect = Mat::Zero(2, 2);
            expect(outcome, outcome) = 1.0;
            if ((p - expect).cwiseAbs().maxCoeff() == 0.0)
                return json{{"qubit", m.targets[0]}, {"outcome", outcome}};
        }
    }
    json j{{"projector", matrix_to(m.projector_E.entries)}};
    std::vector<int> full(m.ambient);
    std::iota(full.begin(), full.end(), 0);
    if (m.targets != full) j["targets"] = m.targets;
    return j;
}

Measurement2 measurement_from(const json& j, int ambient, const std::string& origin) {
    if (!j.is_object()) fail(origin, "a measurement is an object");
    if (j.contains("qubit")) {
        const int qubit = j.at("qubit").get<int>();
        if (!j.contains("outcome")) fail(origin, "measurement needs an 'outcome'");
        return Measurement2::qubit_outcome(ambient, qubit, j.at("outcome").get<int>());
    }
    if (!j.contains("projector")) fail(origin, "measurement needs 'projector' or 'qubit'");
    Projector p(matrix_from(j.at("projector"), origin));
    std::vector<int> targets;
    if (j.contains("targets")) {
        targets = targets_from(j.at("targets"), origin);
    } else {
        targets.resize(p.qubit_count());
        std::iota(targets.begin(), targets.end(), 0);
    }
    return Measurement2(std::move(p), std::move(targets), ambient);
}

json promise_to(const SeparablePromise& p) {
    return json{{"delta", number_to(p.delta)}, {"epsilon", number_to(p.epsilon)}};
}

SeparablePromise promise_from(const json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("delta") || !j.contains("epsilon"))
        fail(origin, "a promise needs 'delta' and 'epsilon'");
    return SeparablePromise(number_from(j.at("delta"), origin, "delta"),
                            number_from(j.at("epsilon"), origin, "epsilon"));
}

std::string bools_to_bits(const std::vector<bool>& v) {
    std::string s;
    for (bool b : v) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<bool> bits_to_bools(const std::string& s, const std::string& origin) {
    std::vector<bool> out;
    for (char c : s) {
        if (c != '0' && c != '1') fail(origin, "truth tables are strings over {0,1}");
        out.push_back(c == '1');
    }
    return out;
}

json fixture_to(const LanguageFixture& f) {
    return json{{"n", f.n},
                {"m", f.m},
                {"members", bools_to_bits(f.members)},
                {"circuit", circuit_to(f.circuit)},
                {"promise", promise_to(f.promise)}};
}

LanguageFixture fixture_from(const json& j, const std::string& origin) {
    if (!j.is_object()) fail(origin, "'fixture' must be an object");
    for (const char* key : {"n", "m", "members", "circuit", "promise"})
        if (!j.contains(key)) fail(origin, std::string("fixture is missing '") + key + "'");
    LanguageFixture f;
    f.n = j.at("n").get<int>();
    f.m = j.at("m").get<int>();
    f.members = bits_to_bools(j.at("members").get<std::string>(), origin);
    f.circuit = circuit_from(j.at("circuit"), f.n + f.m, origin);
    f.promise = promise_from(j.at("promise"), origin);
    return f;
}

json oracle_fixture_to(const OracleFixture& f) {
    return json{{"qubits", f.qubits},
                {"answer_qubit", f.answer_qubit},
                {"truth", bools_to_bits(f.truth)},
                {"template", circuit_to(f.template_circuit)},
                {"measurement", measurement_to(f.measurement)}};
}

OracleFixture oracle_fixture_from(const json& j, const std::string& origin) {
    if (!j.is_object()) fail(origin, "'oracle_fixture' must be an object");
    for (const char* key : {"qubits", "answer_qubit", "truth", "template", "measurement"})
        if (!j.contains(key)) fail(origin, std::string("oracle_fixture is missing '") + key + "'");
    OracleFixture f;
    f.qubits = j.at("qubits").get<int>();
    f.answer_qubit = j.at("answer_qubit").get<int>();
    f.truth = bits_to_bools(j.at("truth").get<std::string>(), origin);
    f.template_circuit = circuit_from(j.at("template"), f.qubits, origin);
    f.measurement = measurement_from(j.at("measurement"), f.qubits, origin);
    return f;
}

}  // namespace

std::optional<QuantumSystem> ProblemFile::system() const {
    if (!input || !circuit || !measurement) return std::nullopt;
    return QuantumSystem(*input, *circuit, *measurement);
}

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be an object");

    try {
        ProblemFile pf;
        if (j.contains("qubits")) pf.qubits = j.at("qubits").get<int>();

        auto need_qubits = [&](const char* forwhat) {
            if (!pf.qubits) fail(origin, std::string("'qubits' is required for '") + forwhat + "'");
            return *pf.qubits;
        };

        if (j.contains("input")) pf.input = state_from(j.at("input"), pf.qubits, origin);
        if (j.contains("circuit"))
            pf.circuit = circuit_from(j.at("circuit"), need_qubits("circuit"), origin);
        if (j.contains("measurement"))
            pf.measurement = measurement_from(j.at("measurement"), need_qubits("measurement"), origin);
        if (j.contains("promise")) pf.promise = promise_from(j.at("promise"), origin);
        if (j.contains("circuit1"))
            pf.circuit_1 = circuit_from(j.at("circuit1"), need_qubits("circuit1"), origin);
        if (j.contains("circuit2"))
            pf.circuit_2 = circuit_from(j.at("circuit2"), need_qubits("circuit2"), origin);
        if (j.contains("probe")) pf.probe = state_from(j.at("probe"), pf.qubits, origin);
        if (j.contains("device"))
            pf.device = circuit_from(j.at("device"), need_qubits("device"), origin);
        if (j.contains("fixture")) pf.fixture = fixture_from(j.at("fixture"), origin);
        if (j.contains("oracle_fixture"))
            pf.oracle_fixture = oracle_fixture_from(j.at("oracle_fixture"), origin);
        return pf;
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

ProblemFile parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), path);
}

std::string serialize_problem(const ProblemFile& pf) {
    json j;
    if (pf.qubits) j["qubits"] = *pf.qubits;
    if (pf.input) j["input"] = state_to(*pf.input);
    if (pf.circuit) j["circuit"] = circuit_to(*pf.circuit);
    if (pf.measurement) j["measurement"] = measurement_to(*pf.measurement);
    if (pf.promise) j["promise"] = promise_to(*pf.promise);
    if (pf.circuit_1) j["circuit1"] = circuit_to(*pf.circuit_1);
    if (pf.circuit_2) j["circuit2"] = circuit_to(*pf.circuit_2);
    if (pf.probe) j["probe"] = state_to(*pf.probe);
    if (pf.device) j["device"] = circuit_to(*pf.device);
    if (pf.fixture) j["fixture"] = fixture_to(*pf.fixture);
    if (pf.oracle_fixture) j["oracle_fixture"] = oracle_fixture_to(*pf.oracle_fixture);
    return j.dump(2) + "\n";
}

ProblemFile problem_for_system(const QuantumSystem& qs) {
    ProblemFile pf;
    pf.qubits = qs.qubit_count();
    pf.input = qs.input;
    pf.circuit = qs.circuit;
    pf.measurement = qs.measurement;
    return pf;
}

}  // namespace qaa
