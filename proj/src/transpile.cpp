#include "qencode/transpile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace qencode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDropTol = 1e-12;

// ---- stage 0: multi-controlled rotation folding --------------------------
//
// A pattern-controlled rotation reaches the lowering stage as the sandwich
//   R(a) t; mcx C t; R(-a) t; mcx C t          (R = RY or RZ)
// which costs two multi-controlled X decompositions.  The same unitary is a
// uniformly controlled rotation whose gray-code form needs only 2^c CX and
// 2^c rotations, ancilla-free, which is far cheaper for every control count
// we emit.  Rewrite the sandwich in place before lowering.

bool is_bare_rot(const Gate& g) {
    return (g.kind == GateKind::RY || g.kind == GateKind::RZ) &&
           g.controls.empty();
}

std::vector<Gate> fold_rotation_sandwiches(const std::vector<Gate>& in) {
    std::vector<Gate> out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        if (i + 3 < in.size() && is_bare_rot(in[i]) &&
            in[i + 1].kind == GateKind::MCX &&
            in[i + 2].kind == in[i].kind && in[i + 2].controls.empty() &&
            in[i + 3].kind == GateKind::MCX &&
            in[i].targets[0] == in[i + 1].targets[0] &&
            in[i].targets[0] == in[i + 2].targets[0] &&
            in[i].targets[0] == in[i + 3].targets[0] &&
            in[i + 1].controls == in[i + 3].controls &&
            in[i + 1].controls.size() >= 2 &&
            in[i + 1].controls.size() <= 16 &&
            std::abs(in[i].params[0] + in[i + 2].params[0]) <=
                1e-12 * std::max(1.0, std::abs(in[i].params[0]))) {
            const GateKind kind = in[i].kind;
            const std::uint32_t t = in[i].targets[0];
            const std::vector<std::uint32_t>& cs = in[i + 1].controls;
            const std::uint32_t c = std::uint32_t(cs.size());
            const double theta = 2.0 * in[i].params[0];
            const double step = theta / double(std::uint64_t{1} << c);
            for (std::uint64_t j = 0; j < (std::uint64_t{1} << c); ++j) {
                const std::uint64_t gray = j ^ (j >> 1);
                const double phi =
                    (std::popcount(gray) & 1) ? -step : step;
                out.push_back({kind, {phi}, {}, {t}});
                const std::uint32_t k =
                    std::min<std::uint32_t>(std::countr_zero(j + 1), c - 1);
                out.push_back({GateKind::CX, {}, {cs[k]}, {t}});
            }
            i += 4;
            continue;
        }
        out.push_back(in[i]);
        ++i;
    }
    return out;
}

// ---- stage 1: lowering to {CX + 1q primitives} --------------------------

struct Lowerer {
    std::uint32_t n;
    std::vector<Gate> out;

    void emit_1q(GateKind kind, std::vector<double> params, std::uint32_t t) {
        out.push_back({kind, std::move(params), {}, {t}});
    }
    void cx(std::uint32_t c, std::uint32_t t) { out.push_back({GateKind::CX, {}, {c}, {t}}); }
    void t_gate(std::uint32_t q, bool dag) {
        emit_1q(GateKind::Phase, {dag ? -kPi / 4 : kPi / 4}, q);
    }

    void toffoli(std::uint32_t c1, std::uint32_t c2, std::uint32_t t) {
        emit_1q(GateKind::H, {}, t);
        cx(c2, t);
        t_gate(t, true);
        cx(c1, t);
        t_gate(t, false);
        cx(c2, t);
        t_gate(t, true);
        cx(c1, t);
        t_gate(t, false);
        t_gate(c2, false);
        emit_1q(GateKind::H, {}, t);
        cx(c1, c2);
        t_gate(c1, false);
        t_gate(c2, true);
        cx(c1, c2);
    }

    std::vector<std::uint32_t> spare_qubits(const std::vector<std::uint32_t>& controls,
                                            std::uint32_t target) {
        std::vector<bool> used(n, false);
        for (auto q : controls) used[q] = true;
        used[target] = true;
        std::vector<std::uint32_t> spares;
        for (std::uint32_t q = 0; q < n; ++q)
            if (!used[q]) spares.push_back(q);
        return spares;
    }

    // Dirty-ancilla staircase: 4(k-2) Toffolis, ancillas restored.
    void mcx_vchain(const std::vector<std::uint32_t>& cs, std::uint32_t t,
                    const std::vector<std::uint32_t>& anc) {
        const std::size_t k = cs.size();
        const std::size_t na = k - 2;  // ancillas used
        auto half = [&] {
            toffoli(cs[k - 1], anc[na - 1], t);
            for (std::size_t i = na - 1; i >= 1; --i) toffoli(cs[i + 1], anc[i - 1], anc[i]);
            toffoli(cs[0], cs[1], anc[0]);
            for (std::size_t i = 1; i <= na - 1; ++i) toffoli(cs[i + 1], anc[i - 1], anc[i]);
        };
        half();
        half();
    }

    void mcx(std::vector<std::uint32_t> cs, std::uint32_t t);

    // Controlled-U ladder for the spare-free case:
    // C^k(U) = CV(c_k, t) C^{k-1}X(->c_k) CV+(c_k, t) C^{k-1}X(->c_k) C^{k-1}(V)
    // with V*V = U.
    void mcu_ladder(std::vector<std::uint32_t> cs, std::uint32_t t, const Mat2& u) {
        if (cs.size() == 1) {
            Circuit tmp(n);
            append_mcu(tmp, u, cs, t);
            for (const auto& g : tmp.gates) lower_gate(g);
            return;
        }
        const Mat2 v = mat_sqrt(u);
        const std::uint32_t last = cs.back();
        std::vector<std::uint32_t> rest(cs.begin(), cs.end() - 1);
        mcu_ladder({last}, t, v);
        mcx(rest, last);
        mcu_ladder({last}, t, v.adjoint());
        mcx(rest, last);
        mcu_ladder(rest, t, v);
    }

    static Mat2 mat_sqrt(const Mat2& u) {
        if (std::abs(u.m01) < 1e-14 && std::abs(u.m10) < 1e-14)
            return {std::sqrt(u.m00), 0.0, 0.0, std::sqrt(u.m11)};
        const cplx tr = u.m00 + u.m11;
        const cplx det = u.m00 * u.m11 - u.m01 * u.m10;
        const cplx disc = std::sqrt(tr * tr - 4.0 * det);
        const cplx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
        // eigenvector for l1: (m01, l1 - m00); for l2: (m01, l2 - m00)
        auto proj_sqrt = [&](cplx l) {
            cplx vx = u.m01, vy = l - u.m00;
            double nn = std::sqrt(std::norm(vx) + std::norm(vy));
            vx /= nn;
            vy /= nn;
            cplx s = std::sqrt(l);
            return Mat2{s * vx * std::conj(vx), s * vx * std::conj(vy),
                        s * vy * std::conj(vx), s * vy * std::conj(vy)};
        };
        Mat2 a = proj_sqrt(l1), b = proj_sqrt(l2);
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }

    void lower_gate(const Gate& g) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::H:
            case GateKind::RY:
            case GateKind::RZ:
            case GateKind::Phase:
            case GateKind::U3:
                out.push_back(g);
                break;
            case GateKind::CX:
                cx(g.controls[0], g.targets[0]);
                break;
            case GateKind::CRY: {
                const double th = g.params[0];
                emit_1q(GateKind::RY, {th / 2}, g.targets[0]);
                cx(g.controls[0], g.targets[0]);
                emit_1q(GateKind::RY, {-th / 2}, g.targets[0]);
                cx(g.controls[0], g.targets[0]);
                break;
            }
            case GateKind::CPhase: {
                const double la = g.params[0];
                emit_1q(GateKind::Phase, {la / 2}, g.controls[0]);
                cx(g.controls[0], g.targets[0]);
                emit_1q(GateKind::Phase, {-la / 2}, g.targets[0]);
                cx(g.controls[0], g.targets[0]);
                emit_1q(GateKind::Phase, {la / 2}, g.targets[0]);
                break;
            }
            case GateKind::Swap:
                cx(g.targets[0], g.targets[1]);
                cx(g.targets[1], g.targets[0]);
                cx(g.targets[0], g.targets[1]);
                break;
            case GateKind::MCX:
                mcx(g.controls, g.targets[0]);
                break;
        }
    }
};

void Lowerer::mcx(std::vector<std::uint32_t> cs, std::uint32_t t) {
    if (cs.size() == 1) {
        cx(cs[0], t);
        return;
    }
    if (cs.size() == 2) {
        toffoli(cs[0], cs[1], t);
        return;
    }
    const std::vector<std::uint32_t> spares = spare_qubits(cs, t);
    if (spares.size() >= cs.size() - 2) {
        mcx_vchain(cs, t, spares);
        return;
    }
    if (!spares.empty()) {
        // Borrow one dirty qubit and split the control set in half.
        const std::uint32_t a = spares[0];
        const std::size_t h = (cs.size() + 1) / 2;
        std::vector<std::uint32_t> c1(cs.begin(), cs.begin() + h);
        std::vector<std::uint32_t> c2(cs.begin() + h, cs.end());
        c2.push_back(a);
        mcx(c1, a);
        mcx(c2, t);
        mcx(c1, a);
        mcx(c2, t);
        return;
    }
    mcu_ladder(std::move(cs), t, mat_x());
}

// ---- stage 2: single-qubit fusion ---------------------------------------

struct Fuser {
    Circuit out;
    std::vector<std::optional<Mat2>> pending;

    explicit Fuser(std::uint32_t n) : out(n), pending(n) {}

    void flush(std::uint32_t q) {
        if (!pending[q]) return;
        const Mat2 u = *pending[q];
        pending[q].reset();
        if (is_identity_up_to_phase(u, kDropTol)) {
            out.global_phase += std::arg(u.m00);
            return;
        }
        ZyzAngles a = zyz_decompose(u);
        out.global_phase += a.phase;
        out.u3(a.theta, a.phi, a.lambda, q);
    }

    void add_1q(std::uint32_t q, const Mat2& u) {
        pending[q] = pending[q] ? u * *pending[q] : u;
    }

    void add_cx(std::uint32_t c, std::uint32_t t) {
        if (pending[c] && !is_diagonal(*pending[c], kDropTol)) flush(c);
        if (pending[t] && !commutes_with_x(*pending[t], kDropTol)) flush(t);
        out.cx(c, t);
    }

    Circuit finish() {
        for (std::uint32_t q = 0; q < out.num_qubits; ++q) flush(q);
        return std::move(out);
    }
};

}  // namespace

std::vector<Gate> lower_to_primitives(const Circuit& c) {
    Lowerer lo{c.num_qubits, {}};
    for (const auto& g : fold_rotation_sandwiches(c.gates)) lo.lower_gate(g);
    return std::move(lo.out);
}

Circuit transpile(const Circuit& c) {
    Lowerer lo{c.num_qubits, {}};
    for (const auto& g : fold_rotation_sandwiches(c.gates)) lo.lower_gate(g);

    Fuser fu(c.num_qubits);
    fu.out.global_phase = c.global_phase;
    for (const auto& g : lo.out) {
        if (g.kind == GateKind::CX) {
            fu.add_cx(g.controls[0], g.targets[0]);
        } else {
            fu.add_1q(g.targets[0], gate_matrix_1q(g));
        }
    }
    return fu.finish();
}

std::size_t depth(const Circuit& c) {
    std::vector<std::size_t> level(c.num_qubits, 0);
    std::size_t d = 0;
    for (const auto& g : c.gates) {
        std::size_t l = 0;
        for (auto q : g.controls) l = std::max(l, level[q]);
        for (auto q : g.targets) l = std::max(l, level[q]);
        ++l;
        for (auto q : g.controls) level[q] = l;
        for (auto q : g.targets) level[q] = l;
        d = std::max(d, l);
    }
    return d;
}

TranspiledCounts transpiled_counts(const Circuit& c) {
    const Circuit t = transpile(c);
    TranspiledCounts r;
    for (const auto& g : t.gates) {
        if (g.kind == GateKind::CX)
            ++r.gate_count_2q;
        else
            ++r.gate_count_1q;
    }
    r.circuit_depth = depth(t);
    return r;
}

// ---- dense-unitary lowering ---------------------------------------------

namespace {

// Flip the basis-state bit `bit` for the single computational state whose
// other bits match `state`, via a pattern-controlled MCX.
void flip_state_bit(Circuit& c, const std::vector<std::uint32_t>& qubits,
                    std::uint64_t state, std::uint32_t bit) {
    std::vector<std::uint32_t> cs;
    std::uint64_t pattern = 0;
    for (std::uint32_t b = 0; b < qubits.size(); ++b) {
        if (b == bit) continue;
        if ((state >> b) & 1) pattern |= std::uint64_t{1} << cs.size();
        cs.push_back(qubits[b]);
    }
    append_mcx(c, cs, pattern, qubits[bit]);
}

// Apply the 2x2 unitary on the pair of basis states (state with bit = 0/1),
// with every other qubit pattern-controlled.
void two_level_on_pair(Circuit& c, const std::vector<std::uint32_t>& qubits,
                       std::uint64_t state, std::uint32_t bit, const Mat2& u) {
    std::vector<std::uint32_t> cs;
    std::uint64_t pattern = 0;
    for (std::uint32_t b = 0; b < qubits.size(); ++b) {
        if (b == bit) continue;
        if ((state >> b) & 1) pattern |= std::uint64_t{1} << cs.size();
        cs.push_back(qubits[b]);
    }
    if (cs.empty()) {
        ZyzAngles a = zyz_decompose(u);
        c.global_phase += a.phase;
        c.u3(a.theta, a.phi, a.lambda, qubits[bit]);
        return;
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(cs[i]);
    append_mcu(c, u, cs, qubits[bit]);
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(cs[i]);
}

}  // namespace

void append_unitary(Circuit& c, const std::vector<cplx>& matrix,
                    const std::vector<std::uint32_t>& qubits) {
    const std::uint64_t dim = std::uint64_t{1} << qubits.size();
    if (matrix.size() != dim * dim)
        throw std::invalid_argument("append_unitary: matrix size mismatch");
    std::vector<cplx> M = matrix;  // column-major working copy
    auto at = [&](std::uint64_t r, std::uint64_t col) -> cplx& { return M[r + dim * col]; };

    // Record of eliminations G (two-level rotations), applied as G * M.
    struct Op {
        std::uint64_t p, q;  // q = p with one bit flipped after gray routing
        Mat2 g;
    };
    std::vector<Op> ops;
    for (std::uint64_t col = 0; col + 1 < dim; ++col) {
        for (std::uint64_t row = dim - 1; row > col; --row) {
            const cplx b = at(row, col);
            if (std::abs(b) < 1e-14) continue;
            const cplx a = at(col, col);
            const double r = std::sqrt(std::norm(a) + std::norm(b));
            const Mat2 g{std::conj(a) / r, std::conj(b) / r, -b / r, a / r};
            // rows (col, row) <- g * rows
            for (std::uint64_t j = col; j < dim; ++j) {
                const cplx x = at(col, j), y = at(row, j);
                at(col, j) = g.m00 * x + g.m01 * y;
                at(row, j) = g.m10 * x + g.m11 * y;
            }
            ops.push_back({col, row, g});
        }
    }
    // M = G1^-1 ... Gk^-1 * D: apply D first, then the inverses in reverse.
    // Columns eliminated above end with a real positive (= 1) diagonal, but
    // columns that were already a unit vector keep their phase, so the
    // residue is a general diagonal of phases.
    for (std::uint64_t col = 0; col < dim; ++col) {
        const double phase = std::arg(at(col, col));
        if (std::abs(phase) < 1e-14) continue;
        for (std::uint32_t b = 0; b < qubits.size(); ++b)
            if (!((col >> b) & 1)) c.x(qubits[b]);
        append_mcp(c, qubits, phase);
        for (std::uint32_t b = 0; b < qubits.size(); ++b)
            if (!((col >> b) & 1)) c.x(qubits[b]);
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const std::uint64_t p = it->p, q = it->q;
        const Mat2 gi = it->g.adjoint();
        // Gray-route q next to p, leaving only the highest differing bit.
        std::uint64_t diff = p ^ q;
        std::vector<std::uint32_t> path;
        for (std::uint32_t b = 0; b < qubits.size(); ++b)
            if ((diff >> b) & 1) path.push_back(b);
        const std::uint32_t last = path.back();
        path.pop_back();
        std::uint64_t cur = q;
        for (auto b : path) {
            flip_state_bit(c, qubits, cur, b);
            cur ^= std::uint64_t{1} << b;
        }
        // cur differs from p only at `last`.  Build the 2x2 in (bit=0,bit=1)
        // order on that qubit: p occupies the branch with its own bit value.
        Mat2 u;
        if ((p >> last) & 1) {
            u = {gi.m11, gi.m10, gi.m01, gi.m00};
        } else {
            u = gi;
        }
        two_level_on_pair(c, qubits, p & ~(std::uint64_t{1} << last), last, u);
        for (auto it2 = path.rbegin(); it2 != path.rend(); ++it2) {
            cur ^= std::uint64_t{1} << *it2;
            flip_state_bit(c, qubits, cur, *it2);
        }
    }
}

}  // namespace qencode
