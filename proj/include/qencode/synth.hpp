#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qencode/circuit.hpp"
#include "qencode/pattern.hpp"

namespace qencode {

// Synthesis metadata returned alongside every circuit.
struct EncodingInfo {
    std::string pattern_name;
    std::uint64_t N = 0;
    std::uint32_t m = 0;
    nlohmann::json params;
    std::size_t gate_count = 0;      // pre-transpile IR gates (composite
                                     // builders like QFT count as one block)
    std::size_t gate_count_1q = 0;   // transpiled
    std::size_t gate_count_2q = 0;   // transpiled
    std::size_t circuit_depth = 0;   // transpiled
    std::string complexity;
    double success_probability = 1.0;
    std::string circuit_code;
    bool validated = false;
    std::vector<cplx> vector;  // populated only when validated
    std::vector<std::string> warnings;
};

struct EncodeResult {
    Circuit circuit;
    EncodingInfo info;
};

// Compile a declared pattern into a circuit preparing its normalized state.
// With validate=true the analytic vector is built, the circuit simulated,
// and the phase-aligned distance asserted to be < tol; the vector is then
// stored in info.vector.  Throws std::invalid_argument on bad parameters,
// std::runtime_error on validation failure or when the register exceeds the
// simulator's width cap.
EncodeResult encode(const Pattern& p, std::uint64_t N, bool validate = false,
                    double tol = 1e-6);

// --- individual synthesizers (all return circuits on m = log2(N) qubits,
// --- except synth_sum which appends ceil(log2 r) ancillas on top) ---------

Circuit synth_sparse(const std::vector<std::pair<std::uint64_t, cplx>>& entries,
                     std::uint64_t N);
Circuit synth_step(std::uint64_t k_e, cplx c, std::uint64_t N);
Circuit synth_square(std::uint64_t k_s, std::uint64_t k_e, cplx c, std::uint64_t N);
Circuit synth_walsh(std::uint32_t k, cplx c0, cplx c1, std::uint64_t N);
Circuit synth_fourier(const std::vector<FourierMode>& modes, std::uint64_t N);
Circuit synth_geometric(cplx r, std::uint64_t k_s, cplx c, std::uint64_t N);
Circuit synth_hamming(cplx r, cplx c, std::uint64_t N);
Circuit synth_staircase(cplx r, cplx c, std::uint64_t N);
Circuit synth_dicke(std::uint32_t k, std::uint64_t N);
Circuit synth_polynomial(const std::vector<cplx>& coeffs, std::uint64_t N);
Circuit synth_sum(const std::vector<std::pair<cplx, Pattern>>& terms, std::uint64_t N);
Circuit synth_partition(const std::vector<Pattern>& parts, std::uint64_t N);
Circuit synth_tensor(const std::vector<std::pair<Pattern, std::uint64_t>>& parts,
                     std::uint64_t N);

// Dispatch to the family synthesizer matching the pattern tree.
Circuit synth_pattern(const Pattern& p, std::uint64_t N);

// --- shared builders -------------------------------------------------------

// QFT with the convention qft(m) = DFT matrix with entries e^{2*pi*i*jk/N}/sqrt(N).
Circuit qft(std::uint32_t m);
Circuit inverse_qft(std::uint32_t m);

// |x> -> |x + k mod 2^m> on all basis states (QFT, phase ramp, inverse QFT).
Circuit draper_add(std::uint32_t m, std::uint64_t k);

struct DyadicBlock {
    std::uint64_t start;
    std::uint64_t width;  // power of two, start % width == 0
};

// Minimal ordered aligned power-of-two cover of [k_s, k_e).
std::vector<DyadicBlock> dyadic_decompose(std::uint64_t k_s, std::uint64_t k_e);

// Orthonormal fast Walsh-Hadamard transform, W f / sqrt(N); self-inverse.
void wht(std::vector<cplx>& v);

// Plain-text gate listing used for EncodingInfo::circuit_code.
std::string format_circuit_code(const Circuit& c);

// Post-selection probability of the LCU construction behind synth_sum.
double sum_success_probability(const std::vector<std::pair<cplx, Pattern>>& terms,
                               std::uint64_t N);

}  // namespace qencode
