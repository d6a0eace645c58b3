#pragma once

#include <complex>
#include <vector>

#include "qencode/circuit.hpp"

namespace qencode {

using Statevector = std::vector<cplx>;

// Maximum width accepted by the dense simulator.
inline constexpr std::uint32_t kMaxSimQubits = 24;

// Apply the circuit to |0...0> and return the full statevector
// (qubit j corresponds to bit j of the basis-state index).
Statevector simulate(const Circuit& c);

// Apply the circuit to an existing state (size must be 2^num_qubits).
void apply_circuit(const Circuit& c, Statevector& state);

// Distance between two states with the global phase aligned away:
// min over phi of ||a - e^{i*phi} b||.  Zero iff equal up to a phase.
double phase_aligned_distance(const Statevector& a, const Statevector& b);

}  // namespace qencode
