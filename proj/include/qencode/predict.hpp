#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "qencode/pattern.hpp"

namespace qencode {

// Transpiled-resource estimate for a pattern, produced without building or
// transpiling the full circuit.
struct PredictResult {
    std::string pattern_name;
    std::uint64_t N = 0;
    std::uint32_t m = 0;
    std::size_t gate_count_1q = 0;
    std::size_t gate_count_2q = 0;
    std::size_t circuit_depth = 0;
    std::string complexity;
    // exact=true: the numbers equal encode()'s transpiled counts to the gate
    // (closed forms frozen against this transpiler).  exact=false: sound
    // upper bounds, always >= the measured counts.
    bool exact = false;
};

// Estimate the transpiled 1q/2q gate counts and depth for encode(p, N).
// Closed-form and exact for HAMMING, WALSH, GEOMETRIC (k_s = 0), STAIRCASE,
// STEP, power-of-2-aligned SQUARE, SPARSE (one entry), FOURIER (one mode)
// and POLYNOMIAL (degree <= 1, m <= 12); an upper bound for every other
// family and for compositions.  Throws std::invalid_argument on bad N.
PredictResult predict_gates(const Pattern& p, std::uint64_t N);

}  // namespace qencode
