#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qencode/su2.hpp"

namespace qencode {

enum class GateKind {
    X,
    H,
    RY,
    RZ,
    Phase,
    U3,
    CX,
    CRY,
    CPhase,
    MCX,
    Swap,
};

const char* gate_name(GateKind kind);
int gate_param_count(GateKind kind);
int gate_target_count(GateKind kind);
bool gate_has_controls(GateKind kind);

// One gate instance.  Controls are always plain (trigger on |1>); synthesis
// routines that need zero-controls wrap the gate in X conjugation instead.
struct Gate {
    GateKind kind;
    std::vector<double> params;
    std::vector<std::uint32_t> controls;
    std::vector<std::uint32_t> targets;
};

// Matrix of a single-target gate, ignoring its controls.
Mat2 gate_matrix_1q(const Gate& g);

struct Circuit {
    std::uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    // Global phase e^{i*global_phase} carried by the prepared state.  It only
    // materialises as a gate when the circuit is turned into a controlled
    // operation.
    double global_phase = 0.0;

    Circuit() = default;
    explicit Circuit(std::uint32_t n) : num_qubits(n) {}

    void append(Gate g);

    // Convenience emitters.
    void x(std::uint32_t t);
    void h(std::uint32_t t);
    void ry(double theta, std::uint32_t t);
    void rz(double theta, std::uint32_t t);
    void phase(double lambda, std::uint32_t t);
    void u3(double theta, double phi, double lambda, std::uint32_t t);
    void cx(std::uint32_t c, std::uint32_t t);
    void cry(double theta, std::uint32_t c, std::uint32_t t);
    void cphase(double lambda, std::uint32_t c, std::uint32_t t);
    void mcx(std::vector<std::uint32_t> cs, std::uint32_t t);
    void swap(std::uint32_t a, std::uint32_t b);

    // Append another circuit's gates verbatim (same qubit indices).
    void extend(const Circuit& other);
    // Append another circuit with all qubit indices shifted up by `offset`.
    void extend_shifted(const Circuit& other, std::uint32_t offset);

    Circuit inverse() const;

    // Controlled version of the whole circuit: this circuit acts on qubits
    // [0, num_qubits) and `num_controls` fresh controls sit above it at
    // [num_qubits, num_qubits + num_controls).  The second overload triggers
    // on a given bit pattern of the controls (bit i of `pattern` is the
    // required value of control i); zero bits are handled by X conjugation.
    Circuit controlled(std::uint32_t num_controls) const;
    Circuit controlled(std::uint32_t num_controls, std::uint64_t pattern) const;

    std::size_t count_2q() const;  // gates touching >= 2 qubits
};

// Multi-controlled emitters used across the synthesis routines.  All accept a
// control bit pattern (bit i of `pattern` = required value of controls[i]);
// mismatched bits are X-conjugated.
//
// MCRY convention: 0 controls -> RY, 1 control -> CRY,
// k >= 2 -> RY(theta/2), MCX, RY(-theta/2), MCX.
void append_mcry(Circuit& c, double theta, const std::vector<std::uint32_t>& controls,
                 std::uint64_t pattern, std::uint32_t target);
void append_mcx(Circuit& c, const std::vector<std::uint32_t>& controls,
                std::uint64_t pattern, std::uint32_t target);
// Multi-controlled phase: diag(1, .., 1, e^{i*lambda}) over the given qubits
// (phase applies when all of them are |1>).
void append_mcp(Circuit& c, std::vector<std::uint32_t> qubits, double lambda);
// Multi-controlled single-qubit unitary via the ZYZ A-B-C split.
void append_mcu(Circuit& c, const Mat2& u, const std::vector<std::uint32_t>& controls,
                std::uint32_t target);

}  // namespace qencode
