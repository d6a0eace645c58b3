#include "qencode/predict.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "qencode/synth.hpp"
#include "qencode/transpile.hpp"

namespace qencode {

namespace {

struct Counts {
    std::size_t q1 = 0, q2 = 0, d = 0;
};

// ---- upper bound from the lowered gate stream ------------------------------
//
// Runs stage-1 lowering only, then replays the fusion pass symbolically: runs
// of single-qubit gates collapse to one U3 each, a run made purely of
// Phase/RZ slides through CX controls and a run made purely of X through CX
// targets.  The real fuser can only do better (matrix-level pass-through and
// identity drops), so the segment count bounds the 1q count from above, the
// CX count is exact, and the ASAP depth over segments bounds the depth.

Counts bound_from_circuit(const Circuit& c) {
    enum class Run { None, Diag, XOnly, Other };
    std::vector<Run> run(c.num_qubits, Run::None);
    std::vector<std::size_t> level(c.num_qubits, 0);
    Counts out;
    auto flush = [&](std::uint32_t q) {
        if (run[q] == Run::None) return;
        ++out.q1;
        ++level[q];
        run[q] = Run::None;
    };
    for (const Gate& g : lower_to_primitives(c)) {
        if (g.kind == GateKind::CX) {
            const std::uint32_t cq = g.controls[0], t = g.targets[0];
            if (run[cq] != Run::None && run[cq] != Run::Diag) flush(cq);
            if (run[t] != Run::None && run[t] != Run::XOnly) flush(t);
            ++out.q2;
            const std::size_t l = std::max(level[cq], level[t]) + 1;
            level[cq] = level[t] = l;
        } else {
            const std::uint32_t t = g.targets[0];
            const Run k = (g.kind == GateKind::Phase || g.kind == GateKind::RZ)
                              ? Run::Diag
                          : (g.kind == GateKind::X) ? Run::XOnly
                                                    : Run::Other;
            run[t] = (run[t] == Run::None || run[t] == k) ? k : Run::Other;
        }
    }
    for (std::uint32_t q = 0; q < c.num_qubits; ++q) flush(q);
    for (auto l : level) out.d = std::max(out.d, l);
    return out;
}

// ---- closed forms (frozen against this transpiler) -------------------------

constexpr double kTiny = 1e-14;

bool rotation_survives(double theta, double phi) {
    Gate g{GateKind::U3, {theta, phi, 0.0}, {}, {0}};
    return !is_identity_up_to_phase(gate_matrix_1q(g));
}

Counts qft_counts(std::uint32_t m) {
    return {std::size_t(m) * m, std::size_t(m) * (m - 1) + 3 * (m / 2),
            std::size_t(7) * m - 6};
}

Counts step_counts(std::uint64_t k_e) {
    if (k_e == 1) return {0, 0, 0};
    const std::size_t t = std::size_t(std::popcount(k_e));
    const std::size_t z = std::size_t(std::countr_zero(k_e));
    const std::size_t a = std::size_t(std::bit_width(k_e)) - 1;
    const std::size_t g = a - z;
    if (t == 1) return {z, 0, 1};
    if (t == 2) return {2 * g + z + 2, 2 * g, 3 * g + 2};
    return {2 * (g + t - 2) + z + t + 1, 2 * (g + t - 2), 3 * g + 4 * t - 5};
}

Counts sparse1_counts(std::uint64_t x) {
    const std::size_t w = std::size_t(std::popcount(x));
    return {w, 0, w ? 1 : 0};
}

Counts geometric_rotations(cplx r, std::uint32_t p) {
    // One rotation per low qubit; kept exactly when the fuser would not
    // drop it as identity-up-to-phase.
    const double argr = std::arg(r);
    std::size_t kept = 0;
    for (std::uint32_t j = 0; j < p; ++j) {
        const double scale = double(std::uint64_t{1} << j);
        const double theta = 2.0 * std::atan(std::pow(std::abs(r), scale));
        const double phi = std::abs(argr) > kTiny ? scale * argr : 0.0;
        if (rotation_survives(theta, phi)) ++kept;
    }
    return {kept, 0, kept ? 1 : 0};
}

Counts fourier1_counts(const FourierMode& mo, std::uint64_t N, std::uint32_t m) {
    Counts c = qft_counts(m);
    const std::uint64_t n = mo.n;
    const std::uint64_t d = n ^ (N - n);
    if (std::popcount(d) == 1) {
        // n = N/4: the pair sits one bit apart, the merge rotation folds
        // into the QFT's leading column, and for phi = 0 (mod pi) the
        // folded gate is the column itself; any other phase survives as
        // one extra gate.
        if (std::abs(std::sin(mo.phi)) > kTiny) ++c.q1;
        return c;
    }
    const std::uint32_t tb = std::uint32_t(std::countr_zero(d));
    const std::uint64_t w = ((n >> tb) & 1) ? N - n : n;
    c.q1 += 1 + std::size_t(std::popcount(w)) - ((w >> (m - 1)) & 1);
    c.q2 += std::size_t(std::popcount(d)) - 1;
    c.d += 2 + ((w >> (m - 2)) & 1);
    return c;
}

// Generic degree-1 polynomial counts, measured once per register size.
constexpr std::size_t kPoly1Q1[] = {0, 0, 5,  19,  72,   240,  647,
                                    1216, 2175, 3288, 4871, 6448, 8659};
constexpr std::size_t kPoly1Q2[] = {0, 0, 2,  14,  62,   214,  582,
                                    1094, 1966, 2982, 4430, 5878, 7902};
constexpr std::size_t kPoly1D[] = {0, 0, 5,  25,  104,  346,  920,
                                   1760, 3111, 4610, 6737, 8916, 12083};

}  // namespace

PredictResult predict_gates(const Pattern& p, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    validate_params(p, N);

    PredictResult r;
    r.pattern_name = p.name();
    r.N = N;
    r.m = m;
    r.complexity = complexity_string(p, N);
    r.exact = true;

    const PatternNode& n = p.node();
    Counts c;
    bool replay = false;

    switch (n.tag) {
        case PatternNode::Tag::Hamming: {
            const double theta = 2.0 * std::atan(std::abs(n.hamming.r));
            const double argr = std::arg(n.hamming.r);
            const bool kept =
                rotation_survives(theta, std::abs(argr) > kTiny ? argr : 0.0);
            c = kept ? Counts{m, 0, 1} : Counts{0, 0, 0};
            break;
        }
        case PatternNode::Tag::Walsh:
            c = {m, 0, 1};
            break;
        case PatternNode::Tag::Staircase:
            if (std::abs(std::arg(n.staircase.r)) > kTiny) {
                c = {std::size_t(3) * m - 1, std::size_t(2) * m - 2,
                     std::size_t(3) * m - 1};
            } else {
                c = {std::size_t(2) * m - 1, std::size_t(2) * m - 2,
                     std::size_t(3) * m - 2};
            }
            break;
        case PatternNode::Tag::Step:
            c = step_counts(n.step.k_e);
            break;
        case PatternNode::Tag::Square: {
            const std::uint64_t k_s = n.square.k_s;
            const std::uint64_t w = n.square.k_e - k_s;
            if (k_s == 0) {
                c = step_counts(n.square.k_e);
            } else if ((w & (w - 1)) == 0 && k_s % w == 0) {
                const std::size_t x = std::size_t(std::popcount(k_s));
                const std::size_t h = std::size_t(std::countr_zero(w));
                c = {x + h, 0, (x + h) ? std::size_t(1) : 0};
            } else {
                replay = true;
            }
            break;
        }
        case PatternNode::Tag::Sparse:
            if (n.sparse.entries.size() == 1) {
                c = sparse1_counts(n.sparse.entries[0].first);
            } else {
                replay = true;
            }
            break;
        case PatternNode::Tag::Geometric: {
            const std::uint64_t k_s = n.geometric.k_s;
            const std::uint64_t w = N - k_s;
            if (k_s == 0) {
                c = geometric_rotations(n.geometric.r, m);
            } else if ((w & (w - 1)) == 0 && k_s % w == 0) {
                const std::uint32_t pw = std::uint32_t(std::countr_zero(w));
                c = geometric_rotations(n.geometric.r, pw);
                c.q1 += std::size_t(std::popcount(k_s));
                c.d = c.q1 ? 1 : 0;
            } else {
                replay = true;
            }
            break;
        }
        case PatternNode::Tag::Fourier:
            if (n.fourier.modes.size() == 1) {
                c = fourier1_counts(n.fourier.modes[0], N, m);
            } else {
                replay = true;
            }
            break;
        case PatternNode::Tag::Polynomial: {
            const auto& co = n.polynomial.coeffs;
            const cplx c1 = co.size() > 1 ? co[1] : cplx{};
            if (co.size() > 2 || m > 12) {
                replay = true;
                break;
            }
            // Degree <= 1: the transform of c0 + c1*x/(N-1) keeps only the
            // mean and the single-bit coefficients; mirror the synthesizer's
            // relative cutoff for a vanishing mean.
            const double mean = std::abs(co[0] + c1 / 2.0);
            const double top = std::abs(c1) * double(std::uint64_t{1} << (m - 1)) /
                               double(N - 1);
            if (std::abs(c1) <= 1e-13 * (std::abs(co[0]) + std::abs(c1))) {
                c = {m, 0, 1};
            } else if (mean <= 1e-13 * std::max(mean, top)) {
                c = {std::size_t(3) * (m - 1), std::size_t(3) * m - 5,
                     std::size_t(4) * m - 5};
            } else {
                c = {kPoly1Q1[m], kPoly1Q2[m], kPoly1D[m]};
            }
            break;
        }
        default:
            replay = true;
            break;
    }

    if (replay) {
        r.exact = false;
        c = bound_from_circuit(synth_pattern(p, N));
    }
    r.gate_count_1q = c.q1;
    r.gate_count_2q = c.q2;
    r.circuit_depth = c.d;
    return r;
}

}  // namespace qencode
