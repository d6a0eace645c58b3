#pragma once

#include <cstddef>

#include "qencode/circuit.hpp"

namespace qencode {

struct TranspiledCounts {
    std::size_t gate_count_1q = 0;  // U3 gates
    std::size_t gate_count_2q = 0;  // CX gates
    std::size_t circuit_depth = 0;
};

// Lower a circuit to the {CX, U3} basis:
//   1. decompose CRY/CPHASE/SWAP/MCX into CX + single-qubit gates,
//   2. fuse runs of single-qubit gates into one U3 (diagonal gates slide
//      through CX controls, X-like gates through CX targets),
//   3. drop single-qubit gates that are identity up to a phase (1e-12),
//      folding the phase into global_phase.
Circuit transpile(const Circuit& c);

// Stage 1 of transpile() alone: decompose every gate into CX and raw
// single-qubit gates, before fusion.  Used by the resource predictor to
// bound counts without running the matrix-level fusion pass.
std::vector<Gate> lower_to_primitives(const Circuit& c);

// ASAP depth: each gate occupies one layer on every qubit it touches.
std::size_t depth(const Circuit& c);

TranspiledCounts transpiled_counts(const Circuit& c);

// Append an arbitrary k-qubit unitary (given as a dense 2^k x 2^k
// column-major matrix, entry [row + dim*col]) acting on the listed qubits
// (qubits[0] = least significant index bit).  Two-level decomposition;
// emitted as multi-controlled gates for the transpiler to lower.
void append_unitary(Circuit& c, const std::vector<cplx>& matrix,
                    const std::vector<std::uint32_t>& qubits);

}  // namespace qencode
