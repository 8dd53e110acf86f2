#include "qaa/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <sstream>

#include "qaa/errors.hpp"

namespace qaa {

namespace {

struct GateInfo {
    Gate gate;
    const char* name;
    int arity;  // -1 = variable (at least 2)
    bool has_angle;
};

constexpr GateInfo kGateTable[] = {
    {Gate::X, "x", 1, false},       {Gate::Y, "y", 1, false},
    {Gate::Z, "z", 1, false},       {Gate::H, "h", 1, false},
    {Gate::S, "s", 1, false},       {Gate::T, "t", 1, false},
    {Gate::CX, "cx", 2, false},     {Gate::CZ, "cz", 2, false},
    {Gate::Swap, "swap", 2, false}, {Gate::MCX, "mcx", -1, false},
    {Gate::RX, "rx", 1, true},      {Gate::RY, "ry", 1, true},
    {Gate::RZ, "rz", 1, true},      {Gate::Phase, "phase", 1, true},
    {Gate::Phase0, "phase0", 1, true},
};

const GateInfo& info(Gate g) {
    for (const auto& e : kGateTable)
        if (e.gate == g) return e;
    throw Error("unknown gate");
}

Mat named_matrix(Gate g, double angle, int arity) {
    const double rsqrt2 = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    Mat m;
    switch (g) {
        case Gate::X:
            m = Mat(2, 2);
            m << 0, 1, 1, 0;
            break;
        case Gate::Y:
            m = Mat(2, 2);
            m << 0, -i, i, 0;
            break;
        case Gate::Z:
            m = Mat(2, 2);
            m << 1, 0, 0, -1;
            break;
        case Gate::H:
            m = Mat(2, 2);
            m << rsqrt2, rsqrt2, rsqrt2, -rsqrt2;
            break;
        case Gate::S:
            m = Mat(2, 2);
            m << 1, 0, 0, i;
            break;
        case Gate::T:
            m = Mat(2, 2);
            m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
            break;
        case Gate::CX:
            m = Mat::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1;
            break;
        case Gate::CZ:
            m = Mat::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case Gate::Swap:
            m = Mat::Zero(4, 4);
            m(0, 0) = m(2, 1) = m(1, 2) = m(3, 3) = 1;
            break;
        case Gate::MCX: {
            const std::int64_t dim = std::int64_t{1} << arity;
            m = Mat::Identity(dim, dim);
            m(dim - 1, dim - 1) = m(dim - 2, dim - 2) = 0;
            m(dim - 1, dim - 2) = m(dim - 2, dim - 1) = 1;
            break;
        }
        case Gate::RX: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            m = Mat(2, 2);
            m << c, -i * s, -i * s, c;
            break;
        }
        case Gate::RY: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            m = Mat(2, 2);
            m << c, -s, s, c;
            break;
        }
        case Gate::RZ:
            m = Mat(2, 2);
            m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2);
            break;
        case Gate::Phase:
            m = Mat(2, 2);
            m << 1, 0, 0, std::polar(1.0, angle);
            break;
        case Gate::Phase0:
            m = Mat(2, 2);
            m << std::polar(1.0, angle), 0, 0, 1;
            break;
    }
    return m;
}

void check_targets(const std::vector<int>& targets) {
    if (targets.empty()) throw Error("gate needs at least one target");
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0) throw Error("negative target qubit");
        if (!seen.insert(t).second) throw Error("duplicate target qubit");
    }
}

}  // namespace

const char* gate_name(Gate g) { return info(g).name; }

std::optional<Gate> gate_from_name(std::string_view name) {
    for (const auto& e : kGateTable)
        if (name == e.name) return e.gate;
    return std::nullopt;
}

bool gate_has_angle(Gate g) { return info(g).has_angle; }
int gate_arity(Gate g) { return info(g).arity; }

GateOp GateOp::named(Gate g, std::vector<int> targets, double angle) {
    check_targets(targets);
    const auto& gi = info(g);
    if (gi.arity >= 0 && gi.arity != static_cast<int>(targets.size()))
        throw Error(std::string("gate ") + gi.name + " expects " + std::to_string(gi.arity) +
                    " targets");
    if (gi.arity < 0 && targets.size() < 2)
        throw Error(std::string("gate ") + gi.name + " expects at least 2 targets");
    GateOp op;
    op.kind = Kind::Named;
    op.gate = g;
    op.angle = angle;
    op.targets = std::move(targets);
    return op;
}

GateOp GateOp::raw(Mat m, std::vector<int> targets) {
    check_targets(targets);
    if (m.rows() != m.cols()) throw Error("raw gate matrix must be square");
    if (m.rows() != (std::int64_t{1} << targets.size()))
        throw DimensionError("raw gate dimension does not match 2^targets");
    GateOp op;
    op.kind = Kind::Raw;
    op.matrix = std::make_shared<const Mat>(std::move(m));
    op.targets = std::move(targets);
    return op;
}

GateOp GateOp::raw(const UnitaryMatrix& m, std::vector<int> targets) {
    return raw(m.entries, std::move(targets));
}

GateOp GateOp::call(std::string slot, std::vector<int> targets) {
    check_targets(targets);
    if (slot.empty()) throw Error("slot name must not be empty");
    GateOp op;
    op.kind = Kind::Slot;
    op.slot = std::move(slot);
    op.targets = std::move(targets);
    return op;
}

GateOp GateOp::adjointed() const {
    GateOp op = *this;
    op.adjoint = !op.adjoint;
    return op;
}

Mat GateOp::local_matrix() const {
    Mat m;
    switch (kind) {
        case Kind::Named: m = named_matrix(gate, angle, arity()); break;
        case Kind::Raw: m = *matrix; break;
        case Kind::Slot: throw UnboundSlotError("slot '" + slot + "' has no matrix");
    }
    return adjoint ? Mat(m.adjoint()) : m;
}

Circuit::Circuit(int qubits, std::vector<GateOp> ops) : qubit_count_(qubits) {
    for (auto& op : ops) push(std::move(op));
}

Circuit& Circuit::push(GateOp op) {
    for (int t : op.targets)
        if (t >= qubit_count_)
            throw DimensionError("target qubit " + std::to_string(t) + " out of range for " +
                                 std::to_string(qubit_count_) + " qubits");
    ops_.push_back(std::move(op));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.qubit_count_ != qubit_count_)
        throw DimensionError("appended circuit has a different qubit count");
    for (const auto& op : other.ops_) push(op);
    for (const auto& [name, impl] : other.bindings_) bindings_.emplace(name, impl);
    return *this;
}

Circuit Circuit::bound(const std::string& slot, Circuit impl) const {
    Circuit out = *this;
    out.bindings_[slot] = std::make_shared<const Circuit>(std::move(impl));
    return out;
}

bool Circuit::has_unbound_slots() const {
    for (const auto& op : ops_) {
        if (op.kind != GateOp::Kind::Slot) continue;
        auto it = bindings_.find(op.slot);
        if (it == bindings_.end()) return true;
        if (it->second->has_unbound_slots()) return true;
    }
    return false;
}

int Circuit::count_slot_sites(const std::string& slot) const {
    int count = 0;
    for (const auto& op : ops_)
        if (op.kind == GateOp::Kind::Slot && (slot.empty() || op.slot == slot)) ++count;
    return count;
}

Circuit Circuit::embedded(int total_qubits, const std::vector<int>& qubit_map) const {
    if (static_cast<int>(qubit_map.size()) != qubit_count_)
        throw DimensionError("qubit map size does not match circuit");
    for (int t : qubit_map)
        if (t < 0 || t >= total_qubits) throw DimensionError("qubit map entry out of range");
    Circuit out(total_qubits);
    for (const auto& op : ops_) {
        GateOp mapped = op;
        for (auto& t : mapped.targets) t = qubit_map[t];
        out.push(std::move(mapped));
    }
    out.bindings_ = bindings_;
    return out;
}

namespace {

std::uint64_t fnv1a(const void* data, size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string Circuit::structure() const {
    std::ostringstream os;
    for (const auto& op : ops_) {
        if (op.adjoint) os << "adj ";
        switch (op.kind) {
            case GateOp::Kind::Named:
                os << gate_name(op.gate);
                if (gate_has_angle(op.gate)) os << "(" << op.angle << ")";
                break;
            case GateOp::Kind::Raw: {
                const Mat& m = *op.matrix;
                os << "raw[" << m.rows() << "x" << m.cols() << " "
                   << std::hex << fnv1a(m.data(), sizeof(Complex) * m.size()) << std::dec << "]";
                break;
            }
            case GateOp::Kind::Slot: os << "call " << op.slot; break;
        }
        for (size_t i = 0; i < op.targets.size(); ++i)
            os << (i ? "," : " ") << "q" << op.targets[i];
        os << "\n";
    }
    return os.str();
}

namespace {

struct BindingContext {
    const Bindings* map = nullptr;
    const BindingContext* parent = nullptr;
};

const Circuit* lookup(const BindingContext* ctx, const std::string& name) {
    for (; ctx; ctx = ctx->parent) {
        auto it = ctx->map->find(name);
        if (it != ctx->map->end()) return it->second.get();
    }
    return nullptr;
}

int mapped_target(const std::vector<int>* map, int t) { return map ? (*map)[t] : t; }

void apply_sequence(const std::vector<GateOp>& ops, bool adjoint, const std::vector<int>* map,
                    int n, Vec& state, const BindingContext* ctx);

// One-qubit fast path; gates touching k qubits go through the general
// embedding below, O(2^n * 2^k) per op.
void apply_matrix(const Mat& m, const std::vector<int>& targets, int n, Vec& state) {
    const std::int64_t dim = std::int64_t{1} << n;
    const int k = static_cast<int>(targets.size());
    if (k == 1) {
        const std::int64_t mask = std::int64_t{1} << (n - 1 - targets[0]);
        for (std::int64_t x = 0; x < dim; ++x) {
            if (x & mask) continue;
            const std::int64_t y = x | mask;
            const Complex a = state(x), b = state(y);
            state(x) = m(0, 0) * a + m(0, 1) * b;
            state(y) = m(1, 0) * a + m(1, 1) * b;
        }
        return;
    }
    std::vector<int> shifts(k);
    std::int64_t clear_mask = dim - 1;
    for (int i = 0; i < k; ++i) {
        shifts[i] = n - 1 - targets[i];
        clear_mask &= ~(std::int64_t{1} << shifts[i]);
    }
    const std::int64_t local_dim = std::int64_t{1} << k;
    Vec out = Vec::Zero(dim);
    for (std::int64_t x = 0; x < dim; ++x) {
        if (state(x) == Complex{0.0, 0.0}) continue;
        std::int64_t local = 0;
        for (int i = 0; i < k; ++i) local = (local << 1) | ((x >> shifts[i]) & 1);
        const std::int64_t base = x & clear_mask;
        for (std::int64_t lp = 0; lp < local_dim; ++lp) {
            const Complex coeff = m(lp, local);
            if (coeff == Complex{0.0, 0.0}) continue;
            std::int64_t y = base;
            for (int i = 0; i < k; ++i)
                if ((lp >> (k - 1 - i)) & 1) y |= (std::int64_t{1} << shifts[i]);
            out(y) += coeff * state(x);
        }
    }
    state = std::move(out);
}

// MCX is its own adjoint and permutes basis states; no matrix needed.
void apply_mcx(const std::vector<int>& targets, int n, Vec& state) {
    const std::int64_t dim = std::int64_t{1} << n;
    const int k = static_cast<int>(targets.size());
    std::int64_t control_mask = 0;
    for (int i = 0; i + 1 < k; ++i) control_mask |= std::int64_t{1} << (n - 1 - targets[i]);
    const std::int64_t flip = std::int64_t{1} << (n - 1 - targets[k - 1]);
    for (std::int64_t x = 0; x < dim; ++x) {
        if ((x & control_mask) != control_mask) continue;
        if (x & flip) continue;
        std::swap(state(x), state(x | flip));
    }
}

void apply_op(const GateOp& op, const std::vector<int>* map, int n, Vec& state,
              const BindingContext* ctx) {
    std::vector<int> targets(op.targets.size());
    for (size_t i = 0; i < targets.size(); ++i) targets[i] = mapped_target(map, op.targets[i]);

    if (op.kind == GateOp::Kind::Slot) {
        const Circuit* bound = lookup(ctx, op.slot);
        if (!bound) throw UnboundSlotError("black-box slot '" + op.slot + "' is not bound");
        if (bound->qubit_count() != op.arity())
            throw DimensionError("binding for slot '" + op.slot +
                                 "' does not match the call-site arity");
        BindingContext inner{&bound->bindings(), ctx};
        apply_sequence(bound->ops(), op.adjoint, &targets, n, state, &inner);
        return;
    }
    if (op.kind == GateOp::Kind::Named && op.gate == Gate::MCX) {
        apply_mcx(targets, n, state);
        return;
    }
    apply_matrix(op.local_matrix(), targets, n, state);
}

void apply_sequence(const std::vector<GateOp>& ops, bool adjoint, const std::vector<int>* map,
                    int n, Vec& state, const BindingContext* ctx) {
    if (!adjoint) {
        for (const auto& op : ops) apply_op(op, map, n, state, ctx);
    } else {
        for (auto it = ops.rbegin(); it != ops.rend(); ++it)
            apply_op(it->adjointed(), map, n, state, ctx);
    }
}

}  // namespace

StateVector apply_circuit(const Circuit& circuit, const StateVector& state) {
    if (circuit.qubit_count() != state.qubit_count)
        throw DimensionError("circuit and state differ in qubit count");
    Vec amps = state.amplitudes;
    BindingContext ctx{&circuit.bindings(), nullptr};
    apply_sequence(circuit.ops(), false, nullptr, state.qubit_count, amps, &ctx);
    return StateVector(state.qubit_count, std::move(amps));
}

Vec apply_to_targets(const Mat& m, const std::vector<int>& targets, const Vec& state,
                     int qubit_count) {
    if (m.rows() != m.cols() || m.rows() != (std::int64_t{1} << targets.size()))
        throw DimensionError("matrix dimension does not match 2^targets");
    if (state.size() != (std::int64_t{1} << qubit_count))
        throw DimensionError("state length does not match qubit count");
    for (int t : targets)
        if (t < 0 || t >= qubit_count) throw DimensionError("target out of range");
    Vec out = state;
    apply_matrix(m, targets, qubit_count, out);
    return out;
}

Circuit circuit_adjoint(const Circuit& circuit) {
    Circuit out(circuit.qubit_count());
    const auto& ops = circuit.ops();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.push(it->adjointed());
    for (const auto& [name, impl] : circuit.bindings()) out = out.bound(name, *impl);
    return out;
}

UnitaryMatrix circuit_unitary(const Circuit& circuit) {
    const int n = circuit.qubit_count();
    const std::int64_t dim = std::int64_t{1} << n;
    Mat u(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        StateVector col = apply_circuit(circuit, StateVector::basis(n, j));
        u.col(j) = col.amplitudes;
    }
    return UnitaryMatrix(std::move(u));
}

Circuit single_gate_circuit(int qubits, GateOp op) {
    Circuit c(qubits);
    c.push(std::move(op));
    return c;
}

Circuit identity_circuit(int qubits) { return Circuit(qubits); }

}  // namespace qaa
