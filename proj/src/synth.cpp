#include "qencode/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qencode/simulate.hpp"
#include "qencode/transpile.hpp"

namespace qencode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-14;

double geo_series(double q, double n) {
    // 1 + q + ... + q^{n-1}
    if (std::abs(q - 1.0) < 1e-15) return n;
    return (1.0 - std::pow(q, n)) / (1.0 - q);
}

// Phase e^{i*lambda} on the single basis state selected by (qubits, pattern);
// bit i of pattern is the required value of qubits[i].
void pattern_mcp(Circuit& c, const std::vector<std::uint32_t>& qubits,
                 std::uint64_t pattern, double lambda) {
    if (std::abs(lambda) < kTiny) return;
    for (std::size_t i = 0; i < qubits.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(qubits[i]);
    append_mcp(c, qubits, lambda);
    for (std::size_t i = 0; i < qubits.size(); ++i)
        if (!((pattern >> i) & 1)) c.x(qubits[i]);
}

// --- anchor loading -------------------------------------------------------
//
// Loads sum_b a_b |idx_b> (normalized) from |0...0> by walking qubits from
// the most significant down and splitting amplitude wherever the anchor set
// straddles a bit boundary.  The rotation at each node only needs the path
// bits as controls: every state populated so far agrees with its own path.

struct AnchorLoader {
    Circuit& c;
    std::uint32_t m;

    void load(std::vector<std::pair<std::uint64_t, cplx>> anchors) {
        std::sort(anchors.begin(), anchors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (anchors.size() == 1) {
            const auto& [idx, a] = anchors[0];
            for (std::uint32_t b = 0; b < m; ++b)
                if ((idx >> b) & 1) c.x(b);
            c.global_phase += std::arg(a);
            return;
        }
        node(int(m) - 1, anchors, {}, 0);
    }

    void node(int h, const std::vector<std::pair<std::uint64_t, cplx>>& s,
              std::vector<std::uint32_t> path, std::uint64_t pattern) {
        if (h < 0) {
            pattern_mcp(c, path, pattern, std::arg(s[0].second));
            return;
        }
        std::vector<std::pair<std::uint64_t, cplx>> s0, s1;
        double w0 = 0.0, w1 = 0.0;
        for (const auto& e : s) {
            if ((e.first >> h) & 1) {
                s1.push_back(e);
                w1 += std::norm(e.second);
            } else {
                s0.push_back(e);
                w0 += std::norm(e.second);
            }
        }
        const std::uint32_t q = std::uint32_t(h);
        if (!s0.empty() && !s1.empty()) {
            append_mcry(c, 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0)), path,
                        pattern, q);
        } else if (s0.empty()) {
            append_mcx(c, path, pattern, q);
        }
        // Descend with the full ancestor path as controls: a sibling branch
        // may share every decision bit below this one.
        path.push_back(q);
        if (!s0.empty()) node(h - 1, s0, path, pattern);
        if (!s1.empty())
            node(h - 1, s1, path, pattern | (std::uint64_t{1} << (path.size() - 1)));
    }
};

// Spread an aligned block [b, b+2^p) from its anchor |b> into either a
// uniform or a geometric-ratio superposition over the block, conditioned on
// the block's high bits.
void spread_block(Circuit& c, std::uint32_t m, std::uint64_t b, std::uint32_t p,
                  const cplx* r) {
    std::vector<std::uint32_t> highs;
    for (std::uint32_t q = p; q < m; ++q) highs.push_back(q);
    const std::uint64_t pat = b >> p;
    for (std::uint32_t j = 0; j < p; ++j) {
        const double theta =
            r ? 2.0 * std::atan(std::pow(std::abs(*r), double(std::uint64_t{1} << j)))
              : kPi / 2.0;
        append_mcry(c, theta, highs, pat, j);
        if (r && std::abs(std::arg(*r)) > kTiny) {
            std::vector<std::uint32_t> qs = highs;
            qs.insert(qs.begin(), j);
            pattern_mcp(c, qs, (pat << 1) | 1, double(std::uint64_t{1} << j) * std::arg(*r));
        }
    }
}

std::uint32_t log2_exact(std::uint64_t w) { return std::uint32_t(std::countr_zero(w)); }

}  // namespace

// --- shared builders --------------------------------------------------------

std::vector<DyadicBlock> dyadic_decompose(std::uint64_t k_s, std::uint64_t k_e) {
    std::vector<DyadicBlock> blocks;
    std::uint64_t pos = k_s;
    while (pos < k_e) {
        std::uint64_t w = pos == 0 ? std::uint64_t{1} << 63
                                   : std::uint64_t{1} << std::countr_zero(pos);
        while (pos + w > k_e) w >>= 1;
        blocks.push_back({pos, w});
        pos += w;
    }
    return blocks;
}

void wht(std::vector<cplx>& v) {
    const std::size_t n = v.size();
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const cplx a = v[j], b = v[j + h];
                v[j] = (a + b) * s;
                v[j + h] = (a - b) * s;
            }
        }
    }
}

Circuit qft(std::uint32_t m) {
    Circuit c(m);
    for (std::uint32_t i = m; i-- > 0;) {
        c.h(i);
        for (std::uint32_t j = i; j-- > 0;)
            c.cphase(kPi / double(std::uint64_t{1} << (i - j)), j, i);
    }
    for (std::uint32_t i = 0; i < m / 2; ++i) c.swap(i, m - 1 - i);
    return c;
}

Circuit inverse_qft(std::uint32_t m) { return qft(m).inverse(); }

Circuit draper_add(std::uint32_t m, std::uint64_t k) {
    Circuit c = qft(m);
    const double scale = 2.0 * kPi * double(k % (std::uint64_t{1} << m)) /
                         double(std::uint64_t{1} << m);
    for (std::uint32_t j = 0; j < m; ++j)
        c.phase(scale * double(std::uint64_t{1} << j), j);
    c.extend(inverse_qft(m));
    return c;
}

// --- SPARSE -----------------------------------------------------------------

Circuit synth_sparse(const std::vector<std::pair<std::uint64_t, cplx>>& entries,
                     std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit dis(m);  // disentangler: maps the target state to e^{i phi}|0>
    std::vector<std::pair<std::uint64_t, cplx>> work = entries;

    using Work = std::vector<std::pair<std::uint64_t, cplx>>;

    // One candidate merge, fully planned: the collapse CNOTs, the rewritten
    // support, and the greedy control set separating the pair from the rest.
    struct Plan {
        std::size_t bi = 0, bj = 0;
        std::uint32_t tb = 0;
        std::vector<std::uint32_t> flips;  // cx(tb, d) collapse targets
        Work after;                        // support after the collapse
        std::vector<std::uint32_t> ctrls;
        std::uint64_t cpat = 0;
        std::size_t cost = SIZE_MAX;
    };

    const auto plan_tb = [m](const Work& w, std::size_t bi, std::size_t bj,
                             std::uint32_t tb) {
        Plan pl;
        pl.bi = bi;
        pl.bj = bj;
        pl.tb = tb;
        pl.after = w;
        const std::uint64_t diff = w[bi].first ^ w[bj].first;
        // Collapse the differing bits onto tb.
        for (std::uint32_t d = 0; d < m; ++d) {
            if (d == tb || !((diff >> d) & 1)) continue;
            pl.flips.push_back(d);
            for (auto& e : pl.after)
                if ((e.first >> tb) & 1) e.first ^= std::uint64_t{1} << d;
        }
        const std::uint64_t common =
            pl.after[bi].first & ~(std::uint64_t{1} << pl.tb);
        std::vector<std::size_t> clash;
        for (std::size_t i = 0; i < pl.after.size(); ++i)
            if (i != bi && i != bj) clash.push_back(i);
        std::uint64_t cmask = 0;
        while (true) {
            std::vector<std::size_t> still;
            for (auto i : clash)
                if ((pl.after[i].first & cmask) == (common & cmask))
                    still.push_back(i);
            if (still.empty()) break;
            std::uint32_t best = 0;
            std::size_t kills = 0;
            for (std::uint32_t q = 0; q < m; ++q) {
                if (q == pl.tb || (cmask >> q) & 1) continue;
                std::size_t k = 0;
                for (auto i : still)
                    if (((pl.after[i].first >> q) & 1) != ((common >> q) & 1)) ++k;
                if (k > kills) {
                    kills = k;
                    best = q;
                }
            }
            cmask |= std::uint64_t{1} << best;
            if ((common >> best) & 1) pl.cpat |= std::uint64_t{1} << pl.ctrls.size();
            pl.ctrls.push_back(best);
        }
        // Rough lowered cost: the collapse CNOTs plus one multi-controlled
        // rotation at c controls.
        const std::size_t c = pl.ctrls.size();
        const std::size_t rot =
            c == 0 ? 1 : c == 1 ? 4 : c == 2 ? 32 : 60 * (c - 1);
        pl.cost = pl.flips.size() + rot;
        return pl;
    };

    // Try every differing bit as the merge target: the choice reshapes the
    // remaining support and often shrinks the control set.
    const auto plan_pair = [m, &plan_tb](const Work& w, std::size_t bi,
                                         std::size_t bj) {
        const std::uint64_t diff = w[bi].first ^ w[bj].first;
        Plan best;
        for (std::uint32_t tb = 0; tb < m; ++tb) {
            if (!((diff >> tb) & 1)) continue;
            Plan pl = plan_tb(w, bi, bj, tb);
            if (pl.cost < best.cost) best = std::move(pl);
        }
        return best;
    };

    while (work.size() > 1) {
        // Candidate pairs: the smallest XOR weight and one tier above it,
        // since a slightly wider pair often admits a far smaller control
        // set; ties go to the earliest pair.
        int wmin = 65;
        for (std::size_t i = 0; i < work.size(); ++i)
            for (std::size_t j = i + 1; j < work.size(); ++j)
                wmin = std::min(wmin,
                                std::popcount(work[i].first ^ work[j].first));
        Plan best;
        for (std::size_t i = 0; i < work.size(); ++i)
            for (std::size_t j = i + 1; j < work.size(); ++j) {
                if (std::popcount(work[i].first ^ work[j].first) > wmin + 99)
                    continue;
                Plan pl = plan_pair(work, i, j);
                if (pl.cost < best.cost) best = std::move(pl);
            }

        for (std::uint32_t d : best.flips) dis.cx(best.tb, d);
        work = std::move(best.after);
        const std::uint32_t tb = best.tb;
        const std::vector<std::uint32_t>& ctrls = best.ctrls;
        const std::uint64_t cpat = best.cpat;
        const std::size_t bi = best.bi, bj = best.bj;

        // Merge amplitudes: rotate the tb=1 amplitude into the tb=0 one.
        auto& lo = ((work[bi].first >> tb) & 1) ? work[bj] : work[bi];
        auto& hi = ((work[bi].first >> tb) & 1) ? work[bi] : work[bj];
        const double phi = std::arg(lo.second);
        const double r0 = std::abs(lo.second);
        cplx rel = hi.second * std::polar(1.0, -phi);
        double r1;
        if (std::abs(rel.imag()) <= kTiny * std::abs(hi.second)) {
            r1 = rel.real();
        } else {
            // One phase gate per merge strips the relative phase.
            const double lam = -std::arg(rel);
            std::vector<std::uint32_t> qs = ctrls;
            qs.insert(qs.begin(), tb);
            pattern_mcp(dis, qs, (cpat << 1) | 1, lam);
            r1 = std::abs(rel);
        }
        const double theta = 2.0 * std::atan2(r1, r0);
        append_mcry(dis, -theta, ctrls, cpat, tb);
        lo.second = std::polar(std::hypot(r0, r1), phi);
        const std::uint64_t gone = hi.first;
        std::erase_if(work, [&](const auto& e) { return e.first == gone; });
    }
    const auto [x, a] = work[0];
    for (std::uint32_t b = 0; b < m; ++b)
        if ((x >> b) & 1) dis.x(b);

    Circuit c = dis.inverse();
    c.global_phase += std::arg(a);
    return c;
}

// --- STEP -------------------------------------------------------------------

Circuit synth_step(std::uint64_t k_e, cplx c0, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    c.global_phase += std::arg(c0);
    if (k_e == 1) return c;
    if ((k_e & (k_e - 1)) == 0) {
        for (std::uint32_t j = 0; j < log2_exact(k_e); ++j) c.h(j);
        return c;
    }
    std::vector<std::uint32_t> p;  // set bits, descending
    for (std::uint32_t b = m + 1; b-- > 0;)
        if ((k_e >> b) & 1) p.push_back(b);
    const std::size_t t = p.size();
    std::vector<double> R(t);  // mass of blocks j..t-1
    double acc = 0.0;
    for (std::size_t j = t; j-- > 0;) {
        acc += double(std::uint64_t{1} << p[j]);
        R[j] = acc;
    }
    // Split off one aligned block per set bit, walking the anchors down.
    c.ry(2.0 * std::asin(std::sqrt(R[1] / R[0])), p[0]);
    for (std::size_t j = 1; j + 1 < t; ++j)
        c.cry(2.0 * std::asin(std::sqrt(R[j + 1] / R[j])), p[j - 1], p[j]);
    // Fill each block to uniform, last block first so every control still
    // sits on an unsuperposed anchor bit.
    for (std::size_t a = t - 1; a-- > 0;) {
        c.x(p[a]);
        for (std::uint32_t q = p[a + 1]; q < p[a]; ++q) c.cry(kPi / 2.0, p[a], q);
        c.x(p[a]);
    }
    for (std::uint32_t q = 0; q < p[t - 1]; ++q) c.h(q);
    return c;
}

// --- SQUARE -----------------------------------------------------------------

Circuit synth_square(std::uint64_t k_s, std::uint64_t k_e, cplx c0, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    if (k_s == 0) return synth_step(k_e, c0, N);
    const std::uint64_t w = k_e - k_s;
    Circuit c(m);
    c.global_phase += std::arg(c0);
    if ((w & (w - 1)) == 0 && k_s % w == 0) {
        const std::uint32_t p = log2_exact(w);
        for (std::uint32_t b = p; b < m; ++b)
            if ((k_s >> b) & 1) c.x(b);
        for (std::uint32_t j = 0; j < p; ++j) c.h(j);
        return c;
    }
    c.extend(synth_step(w, 1.0, N));
    c.extend(draper_add(m, k_s));
    return c;
}

// --- WALSH ------------------------------------------------------------------

Circuit synth_walsh(std::uint32_t k, cplx c0, cplx c1, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    const double r0 = std::abs(c0), r1 = std::abs(c1);
    c.ry(2.0 * std::atan2(r0 - r1, r0 + r1), k);
    for (std::uint32_t j = 0; j < m; ++j) c.h(j);
    const double dphi = std::arg(c1) - std::arg(c0);
    const bool complex_pair = r0 > 0.0 && r1 > 0.0 && std::abs(dphi) > kTiny;
    if (complex_pair) c.phase(dphi, k);
    c.global_phase += r0 > 0.0 ? std::arg(c0) : std::arg(c1);
    return c;
}

// --- FOURIER ----------------------------------------------------------------

Circuit synth_fourier(const std::vector<FourierMode>& modes, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    const double rootN = std::sqrt(double(N));
    std::map<std::uint64_t, cplx> g;
    const cplx inv2i(0.0, -0.5);  // 1/(2i)
    for (const auto& mo : modes) {
        g[mo.n] += rootN * mo.A * inv2i * std::polar(1.0, mo.phi);
        g[N - mo.n] -= rootN * mo.A * inv2i * std::polar(1.0, -mo.phi);
    }
    std::vector<std::pair<std::uint64_t, cplx>> entries;
    for (const auto& [i, a] : g)
        if (std::abs(a) > kTiny) entries.push_back({i, a});
    if (entries.empty())
        throw std::invalid_argument("FOURIER: the modes cancel to the zero vector");
    Circuit c = synth_sparse(entries, N);
    c.extend(qft(m));
    return c;
}

// --- GEOMETRIC --------------------------------------------------------------

Circuit synth_geometric(cplx r, std::uint64_t k_s, cplx c0, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    c.global_phase += std::arg(c0);
    const double argr = std::arg(r);
    if (k_s == 0) {
        for (std::uint32_t j = 0; j < m; ++j) {
            const double theta =
                2.0 * std::atan(std::pow(std::abs(r), double(std::uint64_t{1} << j)));
            if (std::abs(argr) > kTiny) {
                c.u3(theta, double(std::uint64_t{1} << j) * argr, 0.0, j);
            } else {
                c.ry(theta, j);
            }
        }
        return c;
    }
    const std::uint64_t w = N - k_s;
    if ((w & (w - 1)) == 0 && k_s % w == 0) {
        const std::uint32_t p = log2_exact(w);
        for (std::uint32_t b = p; b < m; ++b)
            if ((k_s >> b) & 1) c.x(b);
        for (std::uint32_t j = 0; j < p; ++j) {
            const double theta =
                2.0 * std::atan(std::pow(std::abs(r), double(std::uint64_t{1} << j)));
            if (std::abs(argr) > kTiny) {
                c.u3(theta, double(std::uint64_t{1} << j) * argr, 0.0, j);
            } else {
                c.ry(theta, j);
            }
        }
        return c;
    }
    const auto blocks = dyadic_decompose(k_s, N);
    std::vector<std::pair<std::uint64_t, cplx>> anchors;
    for (const auto& b : blocks) {
        const double mag = std::pow(std::abs(r), double(b.start - k_s)) *
                           std::sqrt(geo_series(std::norm(r), double(b.width)));
        anchors.push_back(
            {b.start, std::polar(mag, double(b.start - k_s) * argr)});
    }
    AnchorLoader{c, m}.load(anchors);
    for (const auto& b : blocks)
        if (b.width > 1) spread_block(c, m, b.start, log2_exact(b.width), &r);
    return c;
}

// --- HAMMING ----------------------------------------------------------------

Circuit synth_hamming(cplx r, cplx c0, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    c.global_phase += std::arg(c0);
    const double theta = 2.0 * std::atan(std::abs(r));
    const double argr = std::arg(r);
    for (std::uint32_t j = 0; j < m; ++j) {
        if (std::abs(argr) > kTiny) {
            c.u3(theta, argr, 0.0, j);
        } else {
            c.ry(theta, j);
        }
    }
    return c;
}

// --- STAIRCASE --------------------------------------------------------------

Circuit synth_staircase(cplx r, cplx c0, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    c.global_phase += std::arg(c0);
    const double q = std::norm(r);
    // alpha_k = |r|^k for k = 0..m; theta_k from the residual mass above k.
    // tail_k = sum_{j>=k} q^j = q^k * geo(m+1-k)
    for (std::uint32_t k = 0; k < m; ++k) {
        const double tail = std::pow(q, double(k + 1)) * geo_series(q, double(m - k));
        const double theta =
            2.0 * std::atan(std::sqrt(tail) / std::pow(std::abs(r), double(k)));
        if (k == 0) {
            c.ry(theta, 0);
        } else {
            c.cry(theta, k - 1, k);
        }
    }
    const double argr = std::arg(r);
    if (std::abs(argr) > kTiny)
        for (std::uint32_t j = 0; j < m; ++j) c.phase(argr, j);
    return c;
}

// --- DICKE ------------------------------------------------------------------

namespace {

// Split & cyclic shift block of the deterministic Dicke cascade.
void dicke_scs(Circuit& c, std::uint32_t l, std::uint32_t kk) {
    c.cx(l - 2, l - 1);
    c.cry(2.0 * std::acos(std::sqrt(1.0 / double(l))), l - 1, l - 2);
    c.cx(l - 2, l - 1);
    for (std::uint32_t i = 2; i <= kk; ++i) {
        c.cx(l - i - 1, l - 1);
        append_mcry(c, 2.0 * std::acos(std::sqrt(double(i) / double(l))),
                    {l - 1, l - i}, 0b11, l - i - 1);
        c.cx(l - i - 1, l - 1);
    }
}

}  // namespace

Circuit synth_dicke(std::uint32_t k, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    if (k == 0) return c;
    if (k == m) {
        for (std::uint32_t j = 0; j < m; ++j) c.x(j);
        return c;
    }
    const bool flip = k > m / 2;
    const std::uint32_t kk = flip ? m - k : k;
    for (std::uint32_t j = m - kk; j < m; ++j) c.x(j);
    for (std::uint32_t l = m; l >= 3; --l) dicke_scs(c, l, std::min(kk, l - 1));
    if (!flip) {
        dicke_scs(c, 2, 1);
    } else {
        // Complementing all m qubits turns the weight-kk state into the
        // requested weight-(m-kk) one.  The X pair on the last block's qubits
        // folds into the block itself -- X0 X1 after CX(0->1) equals X0 in
        // front of it, and that X0 merges with the rotation -- so the
        // complemented circuit keeps the exact gate skeleton of the direct
        // one.  The remaining X gates sit off the critical path.
        c.cx(0, 1);
        c.x(0);
        c.cry(-kPi / 2.0, 1, 0);
        c.cx(0, 1);
        for (std::uint32_t j = 2; j < m; ++j) c.x(j);
    }
    return c;
}

// --- POLYNOMIAL -------------------------------------------------------------

Circuit synth_polynomial(const std::vector<cplx>& coeffs, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    const std::size_t d = coeffs.size() - 1;
    std::vector<cplx> f(N);
    for (std::uint64_t i = 0; i < N; ++i) {
        const double x = double(i) / double(N - 1);
        cplx v = 0.0;
        double xp = 1.0;
        for (auto ck : coeffs) {
            v += ck * xp;
            xp *= x;
        }
        f[i] = v;
    }
    wht(f);
    double peak = 0.0;
    for (auto a : f) peak = std::max(peak, std::abs(a));
    std::vector<std::pair<std::uint64_t, cplx>> entries;
    for (std::uint64_t i = 0; i < N; ++i)
        if (std::size_t(std::popcount(i)) <= d && std::abs(f[i]) > 1e-13 * peak)
            entries.push_back({i, f[i]});
    if (entries.empty())
        throw std::invalid_argument("POLYNOMIAL: the polynomial vanishes on the grid");
    Circuit c = synth_sparse(entries, N);
    for (std::uint32_t j = 0; j < m; ++j) c.h(j);
    return c;
}

// --- SUM --------------------------------------------------------------------

namespace {

Circuit synth_leaf(const Pattern& p, std::uint64_t N) {
    const PatternNode& n = p.node();
    switch (n.tag) {
        case PatternNode::Tag::Sparse: return synth_sparse(n.sparse.entries, N);
        case PatternNode::Tag::Step: return synth_step(n.step.k_e, n.step.c, N);
        case PatternNode::Tag::Square:
            return synth_square(n.square.k_s, n.square.k_e, n.square.c, N);
        case PatternNode::Tag::Walsh:
            return synth_walsh(n.walsh.k, n.walsh.c0, n.walsh.c1, N);
        case PatternNode::Tag::Fourier: return synth_fourier(n.fourier.modes, N);
        case PatternNode::Tag::Geometric:
            return synth_geometric(n.geometric.r, n.geometric.k_s, n.geometric.c, N);
        case PatternNode::Tag::Hamming:
            return synth_hamming(n.hamming.r, n.hamming.c, N);
        case PatternNode::Tag::Staircase:
            return synth_staircase(n.staircase.r, n.staircase.c, N);
        case PatternNode::Tag::Dicke: return synth_dicke(n.dicke.k, N);
        case PatternNode::Tag::Polynomial:
            return synth_polynomial(n.polynomial.coeffs, N);
        case PatternNode::Tag::Sum: return synth_sum(n.sum.terms, N);
        case PatternNode::Tag::Partition: return synth_partition(n.partition.parts, N);
        case PatternNode::Tag::Tensor: return synth_tensor(n.tensor.parts, N);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Circuit synth_pattern(const Pattern& p, std::uint64_t N) { return synth_leaf(p, N); }

namespace {

std::vector<double> sum_beta_sq(const std::vector<std::pair<cplx, Pattern>>& terms,
                                std::uint64_t N) {
    std::vector<double> b2;
    double z2 = 0.0;
    for (const auto& [w, q] : terms) {
        const double v = std::abs(w) * pattern_norm(q, N);
        b2.push_back(v);
        z2 += v;
    }
    for (auto& v : b2) v /= z2;
    return b2;
}

bool sum_disjoint(const std::vector<std::pair<cplx, Pattern>>& terms,
                  std::uint64_t N) {
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (!support(terms[i].second, N).disjoint_with(support(terms[j].second, N)))
                return false;
    return true;
}

}  // namespace

double sum_success_probability(const std::vector<std::pair<cplx, Pattern>>& terms,
                               std::uint64_t N) {
    if (terms.size() == 1) return 1.0;
    const std::vector<double> b2 = sum_beta_sq(terms, N);
    if (sum_disjoint(terms, N)) {
        double p = 0.0;
        for (double v : b2) p += v * v;
        return p;
    }
    // || sum_j b2_j e^{i arg w_j} fhat_j ||^2 via streamed inner products.
    const std::size_t r = terms.size();
    std::vector<double> norms(r);
    for (std::size_t j = 0; j < r; ++j) norms[j] = pattern_norm(terms[j].second, N);
    cplx p = 0.0;
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
            cplx ip = 0.0;
            for (std::uint64_t i = 0; i < N; ++i)
                ip += std::conj(amp_at(terms[j].second, N, i)) *
                      amp_at(terms[k].second, N, i);
            ip /= norms[j] * norms[k];
            p += b2[j] * b2[k] *
                 std::polar(1.0, std::arg(terms[k].first) - std::arg(terms[j].first)) *
                 ip;
        }
    return p.real();
}

Circuit synth_sum(const std::vector<std::pair<cplx, Pattern>>& terms,
                  std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    if (terms.size() == 1) {
        Circuit c = synth_leaf(terms[0].second, N);
        c.global_phase += std::arg(terms[0].first);
        return c;
    }
    const std::size_t r = terms.size();
    const std::uint32_t n_anc = std::uint32_t(std::bit_width(r - 1));
    const std::vector<double> b2 = sum_beta_sq(terms, N);

    Circuit prep(m + n_anc);
    auto mass = [&](std::uint64_t lo, std::uint64_t hi) {
        double s = 0.0;
        for (std::uint64_t j = lo; j < std::min<std::uint64_t>(hi, r); ++j) s += b2[j];
        return s;
    };
    // Binary RY tree over the ancilla register, highest ancilla bit first.
    auto tree = [&](auto&& self, int bit, std::uint64_t lo) -> void {
        if (bit < 0) return;
        const std::uint64_t half = std::uint64_t{1} << bit;
        const double w0 = mass(lo, lo + half);
        const double w1 = mass(lo + half, lo + 2 * half);
        if (w1 > 0.0) {
            std::vector<std::uint32_t> cs;
            std::uint64_t pat = 0;
            for (std::uint32_t b = bit + 1; b < n_anc; ++b) {
                if ((lo >> b) & 1) pat |= std::uint64_t{1} << cs.size();
                cs.push_back(m + b);
            }
            append_mcry(prep, 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0)), cs, pat,
                        m + std::uint32_t(bit));
        }
        if (w0 > 0.0) self(self, bit - 1, lo);
        if (w1 > 0.0) self(self, bit - 1, lo + half);
    };
    tree(tree, int(n_anc) - 1, 0);

    Circuit c(m + n_anc);
    c.extend(prep);
    for (std::size_t j = 0; j < r; ++j) {
        Circuit comp = synth_leaf(terms[j].second, N);
        comp.global_phase += std::arg(terms[j].first);
        c.extend(comp.controlled(n_anc, j));
    }
    c.extend(prep.inverse());
    return c;
}

// --- PARTITION --------------------------------------------------------------

Circuit synth_partition(const std::vector<Pattern>& parts, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    std::vector<std::pair<std::uint64_t, cplx>> anchors;
    struct Spread {
        std::uint64_t start;
        std::uint32_t p;
        bool geometric;
        cplx r;
    };
    std::vector<Spread> spreads;
    auto add_blocks = [&](std::uint64_t k_s, std::uint64_t k_e, cplx amp, const cplx* r) {
        for (const auto& b : dyadic_decompose(k_s, k_e)) {
            cplx a;
            if (r) {
                const double mag = std::pow(std::abs(*r), double(b.start - k_s)) *
                                   std::sqrt(geo_series(std::norm(*r), double(b.width)));
                a = amp * std::polar(mag, double(b.start - k_s) * std::arg(*r));
            } else {
                a = amp * std::sqrt(double(b.width));
            }
            anchors.push_back({b.start, a});
            if (b.width > 1)
                spreads.push_back({b.start, log2_exact(b.width), r != nullptr,
                                   r ? *r : cplx{}});
        }
    };
    for (const auto& part : parts) {
        const PatternNode& n = part.node();
        switch (n.tag) {
            case PatternNode::Tag::Sparse:
                for (const auto& e : n.sparse.entries) anchors.push_back(e);
                break;
            case PatternNode::Tag::Step:
                add_blocks(0, n.step.k_e, n.step.c, nullptr);
                break;
            case PatternNode::Tag::Square:
                add_blocks(n.square.k_s, n.square.k_e, n.square.c, nullptr);
                break;
            case PatternNode::Tag::Geometric:
                add_blocks(n.geometric.k_s, N, n.geometric.c, &n.geometric.r);
                break;
            default:
                throw std::invalid_argument(
                    "PARTITION: only bounded-support parts are supported");
        }
    }
    AnchorLoader{c, m}.load(anchors);
    for (const auto& s : spreads)
        spread_block(c, m, s.start, s.p, s.geometric ? &s.r : nullptr);
    return c;
}

// --- TENSOR -----------------------------------------------------------------

Circuit synth_tensor(const std::vector<std::pair<Pattern, std::uint64_t>>& parts,
                     std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    Circuit c(m);
    std::uint32_t top = m;
    for (const auto& [part, Ni] : parts) {
        const std::uint32_t mi = qubits_for(Ni);
        top -= mi;
        c.extend_shifted(synth_leaf(part, Ni), top);
    }
    return c;
}

// --- encode + EncodingInfo --------------------------------------------------

namespace {

nlohmann::json cnum(cplx z) {
    if (std::abs(z.imag()) <= kImagEps) return z.real();
    return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json pattern_params(const Pattern& p, std::uint64_t N);

nlohmann::json pattern_object(const Pattern& p, std::uint64_t N) {
    return {{"pattern", p.name()}, {"params", pattern_params(p, N)}};
}

nlohmann::json pattern_params(const Pattern& p, std::uint64_t N) {
    const PatternNode& n = p.node();
    nlohmann::json j;
    switch (n.tag) {
        case PatternNode::Tag::Sparse: {
            auto arr = nlohmann::json::array();
            for (const auto& [i, a] : n.sparse.entries)
                arr.push_back({i, cnum(a)});
            j["entries"] = arr;
            break;
        }
        case PatternNode::Tag::Step:
            j["k_e"] = n.step.k_e;
            j["c"] = cnum(n.step.c);
            break;
        case PatternNode::Tag::Square:
            j["k_s"] = n.square.k_s;
            j["k_e"] = n.square.k_e;
            j["c"] = cnum(n.square.c);
            break;
        case PatternNode::Tag::Walsh:
            j["k"] = n.walsh.k;
            j["c0"] = cnum(n.walsh.c0);
            j["c1"] = cnum(n.walsh.c1);
            break;
        case PatternNode::Tag::Fourier: {
            auto arr = nlohmann::json::array();
            for (const auto& mo : n.fourier.modes)
                arr.push_back({mo.n, mo.A, mo.phi});
            j["modes"] = arr;
            break;
        }
        case PatternNode::Tag::Geometric:
            j["r"] = cnum(n.geometric.r);
            j["k_s"] = n.geometric.k_s;
            j["c"] = cnum(n.geometric.c);
            break;
        case PatternNode::Tag::Hamming:
            j["r"] = cnum(n.hamming.r);
            j["c"] = cnum(n.hamming.c);
            break;
        case PatternNode::Tag::Staircase:
            j["r"] = cnum(n.staircase.r);
            j["c"] = cnum(n.staircase.c);
            break;
        case PatternNode::Tag::Dicke:
            j["k"] = n.dicke.k;
            j["c"] = n.dicke.c;
            break;
        case PatternNode::Tag::Polynomial: {
            auto arr = nlohmann::json::array();
            for (auto ck : n.polynomial.coeffs) arr.push_back(cnum(ck));
            j["coeffs"] = arr;
            break;
        }
        case PatternNode::Tag::Sum: {
            auto arr = nlohmann::json::array();
            for (const auto& [w, q] : n.sum.terms) {
                nlohmann::json t = pattern_object(q, N);
                t["weight"] = cnum(w);
                arr.push_back(t);
            }
            j["terms"] = arr;
            break;
        }
        case PatternNode::Tag::Partition: {
            auto arr = nlohmann::json::array();
            for (const auto& q : n.partition.parts) arr.push_back(pattern_object(q, N));
            j["parts"] = arr;
            break;
        }
        case PatternNode::Tag::Tensor: {
            auto arr = nlohmann::json::array();
            for (const auto& [q, Ni] : n.tensor.parts) {
                nlohmann::json t = pattern_object(q, Ni);
                t["N"] = Ni;
                arr.push_back(t);
            }
            j["of"] = arr;
            break;
        }
    }
    return j;
}

std::size_t qft_gate_count(std::uint32_t m) {
    return std::size_t(m) * (m + 1) / 2 + m / 2;
}

}  // namespace

std::string format_circuit_code(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.num_qubits) + "\n";
    char buf[64];
    for (const auto& g : c.gates) {
        std::string name = gate_name(g.kind);
        for (auto& ch : name) ch = char(std::tolower(static_cast<unsigned char>(ch)));
        out += name;
        for (double v : g.params) {
            std::snprintf(buf, sizeof buf, " %.17g", v);
            out += buf;
        }
        for (auto q : g.controls) out += " q" + std::to_string(q);
        for (auto q : g.targets) out += " q" + std::to_string(q);
        out += "\n";
    }
    if (std::abs(c.global_phase) > kTiny) {
        std::snprintf(buf, sizeof buf, "global_phase %.17g\n", c.global_phase);
        out += buf;
    }
    return out;
}

EncodeResult encode(const Pattern& p, std::uint64_t N, bool validate, double tol) {
    validate_params(p, N);
    const std::uint32_t m = qubits_for(N);
    const PatternNode& n = p.node();

    EncodeResult r;
    r.circuit = synth_leaf(p, N);
    EncodingInfo& info = r.info;
    info.pattern_name = p.name();
    info.N = N;
    info.m = m;
    info.params = pattern_params(p, N);
    info.complexity = complexity_string(p, N);

    info.gate_count = r.circuit.gates.size();
    if (n.tag == PatternNode::Tag::Square && n.square.k_s != 0) {
        const std::uint64_t w = n.square.k_e - n.square.k_s;
        if (!((w & (w - 1)) == 0 && n.square.k_s % w == 0)) {
            // Count the adder's QFT halves as one block each.
            info.gate_count =
                synth_step(w, 1.0, N).gates.size() + 2 + m;
        }
    } else if (n.tag == PatternNode::Tag::Fourier) {
        info.gate_count = r.circuit.gates.size() - qft_gate_count(m) + 1;
    }

    if (n.tag == PatternNode::Tag::Sum) {
        info.success_probability = sum_success_probability(n.sum.terms, N);
        if (n.sum.terms.size() > 1 && !sum_disjoint(n.sum.terms, N))
            info.warnings.push_back(
                "SUM components have overlapping support; success probability "
                "computed from explicit inner products");
    }

    const TranspiledCounts tc = transpiled_counts(r.circuit);
    info.gate_count_1q = tc.gate_count_1q;
    info.gate_count_2q = tc.gate_count_2q;
    info.circuit_depth = tc.circuit_depth;
    info.circuit_code = format_circuit_code(r.circuit);

    if (validate) {
        if (r.circuit.num_qubits > kMaxSimQubits)
            throw std::runtime_error("encode: validation memory cap exceeded (" +
                                     std::to_string(r.circuit.num_qubits) + " qubits)");
        Statevector s = simulate(r.circuit);
        std::vector<cplx> target = build_vector(p, N);
        if (s.size() > N) {
            // Post-select the ancilla register (top qubits) on |0...0>.
            s.resize(N);
            double mass = 0.0;
            for (auto a : s) mass += std::norm(a);
            const double inv = 1.0 / std::sqrt(mass);
            for (auto& a : s) a *= inv;
        }
        const double dist = phase_aligned_distance(s, target);
        if (!(dist < tol))
            throw std::runtime_error("encode: validation failed, distance " +
                                     std::to_string(dist));
        info.validated = true;
        info.vector = std::move(target);
    }
    return r;
}

}  // namespace qencode
