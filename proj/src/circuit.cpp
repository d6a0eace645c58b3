#include "qencode/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qencode {

namespace {

constexpr double kAngleEps = 1e-15;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::Phase: return "p";
        case GateKind::U3: return "u3";
        case GateKind::CX: return "cx";
        case GateKind::CRY: return "cry";
        case GateKind::CPhase: return "cp";
        case GateKind::MCX: return "mcx";
        case GateKind::Swap: return "swap";
    }
    return "?";
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::CRY:
        case GateKind::CPhase:
            return 1;
        case GateKind::U3:
            return 3;
        default:
            return 0;
    }
}

int gate_target_count(GateKind kind) { return kind == GateKind::Swap ? 2 : 1; }

bool gate_has_controls(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CRY:
        case GateKind::CPhase:
        case GateKind::MCX:
            return true;
        default:
            return false;
    }
}

Mat2 gate_matrix_1q(const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
        case GateKind::CX:
        case GateKind::MCX:
            return mat_x();
        case GateKind::H:
            return mat_h();
        case GateKind::RY:
        case GateKind::CRY:
            return mat_ry(g.params[0]);
        case GateKind::RZ:
            return mat_rz(g.params[0]);
        case GateKind::Phase:
        case GateKind::CPhase:
            return mat_phase(g.params[0]);
        case GateKind::U3:
            return mat_u3(g.params[0], g.params[1], g.params[2]);
        default:
            throw std::invalid_argument("gate has no single-qubit matrix");
    }
}

void Circuit::append(Gate g) {
    require(g.params.size() == static_cast<std::size_t>(gate_param_count(g.kind)),
            "gate: wrong number of parameters");
    require(g.targets.size() == static_cast<std::size_t>(gate_target_count(g.kind)),
            "gate: wrong number of targets");
    if (gate_has_controls(g.kind)) {
        require(!g.controls.empty(), "gate: controlled kind needs controls");
        if (g.kind != GateKind::MCX)
            require(g.controls.size() == 1, "gate: kind takes exactly one control");
    } else {
        require(g.controls.empty(), "gate: kind takes no controls");
    }
    std::vector<std::uint32_t> seen;
    for (auto q : g.controls) seen.push_back(q);
    for (auto q : g.targets) seen.push_back(q);
    for (auto q : seen) require(q < num_qubits, "gate: qubit index out of range");
    std::sort(seen.begin(), seen.end());
    require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
            "gate: duplicate qubit");
    gates.push_back(std::move(g));
}

void Circuit::x(std::uint32_t t) { append({GateKind::X, {}, {}, {t}}); }
void Circuit::h(std::uint32_t t) { append({GateKind::H, {}, {}, {t}}); }
void Circuit::ry(double theta, std::uint32_t t) { append({GateKind::RY, {theta}, {}, {t}}); }
void Circuit::rz(double theta, std::uint32_t t) { append({GateKind::RZ, {theta}, {}, {t}}); }
void Circuit::phase(double lambda, std::uint32_t t) { append({GateKind::Phase, {lambda}, {}, {t}}); }
void Circuit::u3(double theta, double phi, double lambda, std::uint32_t t) {
    append({GateKind::U3, {theta, phi, lambda}, {}, {t}});
}
void Circuit::cx(std::uint32_t c, std::uint32_t t) { append({GateKind::CX, {}, {c}, {t}}); }
void Circuit::cry(double theta, std::uint32_t c, std::uint32_t t) {
    append({GateKind::CRY, {theta}, {c}, {t}});
}
void Circuit::cphase(double lambda, std::uint32_t c, std::uint32_t t) {
    append({GateKind::CPhase, {lambda}, {c}, {t}});
}
void Circuit::mcx(std::vector<std::uint32_t> cs, std::uint32_t t) {
    if (cs.size() == 1) {
        cx(cs[0], t);
    } else {
        append({GateKind::MCX, {}, std::move(cs), {t}});
    }
}
void Circuit::swap(std::uint32_t a, std::uint32_t b) { append({GateKind::Swap, {}, {}, {a, b}}); }

void Circuit::extend(const Circuit& other) {
    require(other.num_qubits <= num_qubits, "extend: circuit too wide");
    for (const auto& g : other.gates) append(g);
    global_phase += other.global_phase;
}

void Circuit::extend_shifted(const Circuit& other, std::uint32_t offset) {
    require(offset + other.num_qubits <= num_qubits, "extend_shifted: circuit too wide");
    for (Gate g : other.gates) {
        for (auto& q : g.controls) q += offset;
        for (auto& q : g.targets) q += offset;
        append(std::move(g));
    }
    global_phase += other.global_phase;
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits);
    inv.global_phase = -global_phase;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::RY:
            case GateKind::RZ:
            case GateKind::Phase:
            case GateKind::CRY:
            case GateKind::CPhase:
                g.params[0] = -g.params[0];
                break;
            case GateKind::U3: {
                // U3(t, p, l)^-1 = U3(-t, -l, -p)
                double t = g.params[0], p = g.params[1], l = g.params[2];
                g.params = {-t, -l, -p};
                break;
            }
            default:
                break;  // X, H, CX, MCX, Swap are self-inverse
        }
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

std::size_t Circuit::count_2q() const {
    std::size_t n = 0;
    for (const auto& g : gates)
        if (g.controls.size() + g.targets.size() >= 2) ++n;
    return n;
}

void append_mcx(Circuit& c, const std::vector<std::uint32_t>& controls,
                std::uint64_t pattern, std::uint32_t target) {
    for (std::size_t i = 0; i < controls.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(controls[i]);
    if (controls.empty()) {
        c.x(target);
    } else {
        c.mcx(controls, target);
    }
    for (std::size_t i = 0; i < controls.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(controls[i]);
}

void append_mcry(Circuit& c, double theta, const std::vector<std::uint32_t>& controls,
                 std::uint64_t pattern, std::uint32_t target) {
    for (std::size_t i = 0; i < controls.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(controls[i]);
    if (controls.empty()) {
        c.ry(theta, target);
    } else if (controls.size() == 1) {
        c.cry(theta, controls[0], target);
    } else {
        c.ry(theta / 2, target);
        c.mcx(controls, target);
        c.ry(-theta / 2, target);
        c.mcx(controls, target);
    }
    for (std::size_t i = 0; i < controls.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(controls[i]);
}

void append_mcp(Circuit& c, std::vector<std::uint32_t> qubits, double lambda) {
    if (std::abs(lambda) < kAngleEps) return;
    if (qubits.empty()) {
        c.global_phase += lambda;
        return;
    }
    if (qubits.size() == 1) {
        c.phase(lambda, qubits[0]);
        return;
    }
    std::uint32_t target = qubits.back();
    qubits.pop_back();
    c.rz(lambda / 2, target);
    c.mcx(qubits, target);
    c.rz(-lambda / 2, target);
    c.mcx(qubits, target);
    append_mcp(c, std::move(qubits), lambda / 2);
}

void append_mcu(Circuit& c, const Mat2& u, const std::vector<std::uint32_t>& controls,
                std::uint32_t target) {
    require(!controls.empty(), "append_mcu: needs at least one control");
    ZyzAngles a = zyz_decompose(u);
    double t = a.theta, p = a.phi, l = a.lambda;
    // U = e^{i alpha} A X B X C with A = RZ(p) RY(t/2),
    // B = RY(-t/2) RZ(-(p+l)/2), C = RZ((l-p)/2).
    if (std::abs((l - p) / 2) > kAngleEps) c.rz((l - p) / 2, target);
    c.mcx(controls, target);
    if (std::abs((p + l) / 2) > kAngleEps) c.rz(-(p + l) / 2, target);
    if (std::abs(t / 2) > kAngleEps) c.ry(-t / 2, target);
    c.mcx(controls, target);
    if (std::abs(t / 2) > kAngleEps) c.ry(t / 2, target);
    if (std::abs(p) > kAngleEps) c.rz(p, target);
    append_mcp(c, controls, a.phase + (p + l) / 2);
}

Circuit Circuit::controlled(std::uint32_t num_controls) const {
    return controlled(num_controls, ~std::uint64_t{0});
}

Circuit Circuit::controlled(std::uint32_t num_controls, std::uint64_t pattern) const {
    Circuit out(num_qubits + num_controls);
    if (num_controls == 0) {
        out.gates = gates;
        out.global_phase = global_phase;
        return out;
    }
    std::vector<std::uint32_t> extra;
    for (std::uint32_t i = 0; i < num_controls; ++i) extra.push_back(num_qubits + i);
    for (std::uint32_t i = 0; i < num_controls; ++i)
        if (!((pattern >> i) & 1)) out.x(extra[i]);
    for (const auto& g : gates) {
        std::vector<std::uint32_t> cs = g.controls;
        cs.insert(cs.end(), extra.begin(), extra.end());
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CX:
            case GateKind::MCX:
                out.mcx(cs, g.targets[0]);
                break;
            case GateKind::RY:
            case GateKind::CRY:
                append_mcry(out, g.params[0], cs, ~std::uint64_t{0}, g.targets[0]);
                break;
            case GateKind::RZ:
                out.rz(g.params[0] / 2, g.targets[0]);
                out.mcx(cs, g.targets[0]);
                out.rz(-g.params[0] / 2, g.targets[0]);
                out.mcx(cs, g.targets[0]);
                break;
            case GateKind::Phase:
            case GateKind::CPhase: {
                cs.push_back(g.targets[0]);
                append_mcp(out, std::move(cs), g.params[0]);
                break;
            }
            case GateKind::H:
            case GateKind::U3:
                append_mcu(out, gate_matrix_1q(g), cs, g.targets[0]);
                break;
            case GateKind::Swap: {
                std::uint32_t a = g.targets[0], b = g.targets[1];
                out.cx(b, a);
                cs.push_back(a);
                out.mcx(cs, b);
                out.cx(b, a);
                break;
            }
        }
    }
    if (std::abs(global_phase) > kAngleEps) {
        append_mcp(out, extra, global_phase);
    }
    for (std::uint32_t i = 0; i < num_controls; ++i)
        if (!((pattern >> i) & 1)) out.x(extra[i]);
    return out;
}

}  // namespace qencode
