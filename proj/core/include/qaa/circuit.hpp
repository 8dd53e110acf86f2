#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaa/state.hpp"
#include "qaa/unitary.hpp"

namespace qaa {

enum class Gate {
    X, Y, Z, H, S, T,
    CX, CZ, Swap,
    // Multi-controlled X: all targets but the last are controls.
    MCX,
    // Parametric single-qubit gates.
    RX, RY, RZ,
    // diag(1, e^{i*angle})
    Phase,
    // diag(e^{i*angle}, 1) -- phases |0> instead of |1>.
    Phase0,
};

const char* gate_name(Gate g);
std::optional<Gate> gate_from_name(std::string_view name);
bool gate_has_angle(Gate g);
int gate_arity(Gate g);  // -1 for variable arity (MCX)

// One circuit element: a named standard gate, a raw unitary on listed targets,
// or a black-box slot to be bound later. `adjoint` inverts the element; it is
// a toggle, so adjoint-of-adjoint is the identity on the op sequence.
struct GateOp {
    enum class Kind { Named, Raw, Slot };

    Kind kind = Kind::Named;
    Gate gate = Gate::X;
    double angle = 0.0;
    std::shared_ptr<const Mat> matrix;  // Kind::Raw
    std::string slot;                   // Kind::Slot
    std::vector<int> targets;
    bool adjoint = false;

    static GateOp named(Gate g, std::vector<int> targets, double angle = 0.0);
    static GateOp raw(Mat m, std::vector<int> targets);
    static GateOp raw(const UnitaryMatrix& m, std::vector<int> targets);
    static GateOp call(std::string slot, std::vector<int> targets);

    GateOp adjointed() const;
    int arity() const { return static_cast<int>(targets.size()); }

    // Matrix of the element on its own targets (slot ops have none).
    Mat local_matrix() const;
};

class Circuit;
using Bindings = std::map<std::string, std::shared_ptr<const Circuit>>;

// Ordered gate sequence over a fixed number of qubits. Black-box slots may be
// bound to concrete circuits; bindings travel with the circuit by value.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int qubits) : qubit_count_(qubits) {}
    Circuit(int qubits, std::vector<GateOp> ops);

    int qubit_count() const { return qubit_count_; }
    const std::vector<GateOp>& ops() const { return ops_; }

    Circuit& push(GateOp op);
    Circuit& append(const Circuit& other);  // same qubit count

    // Binds a black-box slot for every call site with this name.
    Circuit bound(const std::string& slot, Circuit impl) const;
    const Bindings& bindings() const { return bindings_; }
    bool has_unbound_slots() const;
    // Call sites (bound or not) named `slot`; all sites when slot is empty.
    int count_slot_sites(const std::string& slot = "") const;

    // Same ops re-targeted through `qubit_map` on a larger register.
    Circuit embedded(int total_qubits, const std::vector<int>& qubit_map) const;

    // One line per op, slots printed by name; bindings are not serialized.
    // This is the structural form compared by uniformity checks.
    std::string structure() const;

  private:
    int qubit_count_ = 0;
    std::vector<GateOp> ops_;
    Bindings bindings_;
};

StateVector apply_circuit(const Circuit& circuit, const StateVector& state);
Circuit circuit_adjoint(const Circuit& circuit);

// m (square, 2^|targets| wide, not necessarily unitary) applied to the listed
// qubits of an n-qubit amplitude vector, identity elsewhere.
Vec apply_to_targets(const Mat& m, const std::vector<int>& targets, const Vec& state,
                     int qubit_count);

// Full 2^n x 2^n matrix of the circuit (columns = images of basis states).
UnitaryMatrix circuit_unitary(const Circuit& circuit);

// Convenience builders.
Circuit single_gate_circuit(int qubits, GateOp op);
Circuit identity_circuit(int qubits);

}  // namespace qaa
