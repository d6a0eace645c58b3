#include "qencode/mps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qencode/simulate.hpp"
#include "qencode/transpile.hpp"

namespace qencode {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

// Rotate one singular pair so the largest-magnitude entry of the left
// singular vector is real positive; keeps the factorization reproducible
// across SVD backends.
void fix_sign(MatrixXcd& u, MatrixXcd& vdag, Index k) {
    Index best = 0;
    double mag = 0.0;
    for (Index r = 0; r < u.rows(); ++r) {
        const double a = std::abs(u(r, k));
        if (a > mag) {
            mag = a;
            best = r;
        }
    }
    if (mag == 0.0) return;
    const cplx ph = std::conj(u(best, k)) / mag;
    u.col(k) *= ph;
    vdag.row(k) *= std::conj(ph);
}

std::size_t max_bond(const MpsTensors& t) {
    std::size_t chi = 1;
    for (const MpsTensor& s : t.sites) chi = std::max({chi, s.chi_l, s.chi_r});
    return chi;
}

void check_canonical(const MpsTensors& t, double tol) {
    std::size_t prev = 1;
    for (std::size_t j = 0; j < t.sites.size(); ++j) {
        const MpsTensor& s = t.sites[j];
        if (j == 0 && s.chi_l != 1)
            throw std::invalid_argument("MPS: leftmost bond must have dimension 1");
        if (j > 0 && s.chi_l != prev)
            throw std::invalid_argument("MPS: bond dimensions do not chain");
        if (j + 1 == t.sites.size() && s.chi_r != 1)
            throw std::invalid_argument("MPS: rightmost bond must have dimension 1");
        if (s.data.size() != s.chi_l * 2 * s.chi_r)
            throw std::invalid_argument("MPS: tensor data size does not match its shape");
        prev = s.chi_r;
        // Sum over (physical, right) must give the identity on the left bond.
        for (std::size_t a = 0; a < s.chi_l; ++a)
            for (std::size_t b = 0; b < s.chi_l; ++b) {
                cplx acc{0.0, 0.0};
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t r = 0; r < s.chi_r; ++r)
                        acc += s.data[(a * 2 + i) * s.chi_r + r] *
                               std::conj(s.data[(b * 2 + i) * s.chi_r + r]);
                const cplx want = a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                if (std::abs(acc - want) > tol)
                    throw std::invalid_argument("MPS: site tensor is not right-canonical");
            }
    }
}

// Shared cascade + metadata assembly for both entry points.
EncodeResult finish(const MpsTensors& tensors, double trunc_err_sq,
                    std::size_t n_padded, std::size_t bond_dim, bool validate,
                    double tol, const std::vector<cplx>* target) {
    const std::uint32_t m = std::uint32_t(tensors.sites.size());
    const std::uint64_t N = std::uint64_t{1} << m;

    EncodeResult r;
    r.circuit = mps_to_circuit(tensors);
    const std::uint32_t n_bond = r.circuit.num_qubits - m;

    EncodingInfo& info = r.info;
    info.pattern_name = "MPS";
    info.N = N;
    info.m = m;
    info.params = {{"bond_dim", bond_dim},
                   {"n_bond", n_bond},
                   {"truncation_error_sq", trunc_err_sq},
                   {"n_padded", n_padded}};
    info.gate_count = r.circuit.gates.size();
    const TranspiledCounts tc = transpiled_counts(r.circuit);
    info.gate_count_1q = tc.gate_count_1q;
    info.gate_count_2q = tc.gate_count_2q;
    info.circuit_depth = tc.circuit_depth;
    info.complexity = "O(m*chi^2) with chi=" + std::to_string(bond_dim);
    info.success_probability = 1.0;
    info.circuit_code = format_circuit_code(r.circuit);

    if (validate && target != nullptr) {
        if (r.circuit.num_qubits > kMaxSimQubits)
            throw std::runtime_error("MPS: circuit too wide to validate by simulation");
        Statevector s = simulate(r.circuit);
        // The cascade returns the bond register to |0>, so the physical
        // state is the leading block verbatim.
        Statevector phys(s.begin(), s.begin() + N);
        const double dist = phase_aligned_distance(phys, *target);
        if (!(dist < tol))
            throw std::runtime_error("MPS validation failed: distance " +
                                     std::to_string(dist) + " exceeds tolerance " +
                                     std::to_string(tol));
        info.validated = true;
        info.vector = *target;
    }
    return r;
}

}  // namespace

std::pair<MpsTensors, double> mps_decompose(const std::vector<cplx>& v,
                                            std::size_t chi) {
    if (chi == 0) throw std::invalid_argument("MPS: bond dimension must be positive");
    const std::size_t n = v.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("MPS: vector length must be a power of two >= 2");
    const std::uint32_t m = std::uint32_t(std::countr_zero(n));

    double norm_sq = 0.0;
    for (const cplx& a : v) norm_sq += std::norm(a);
    if (norm_sq == 0.0) throw std::invalid_argument("MPS: zero vector");

    MatrixXcd c(Index(n), 1);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < n; ++i) c(Index(i), 0) = v[i] * inv;

    MpsTensors out;
    out.bond_dim = chi;
    out.sites.resize(m);
    double discarded = 0.0;

    for (std::uint32_t j = m; j >= 2; --j) {
        // Split off the least significant remaining bit: rows of the current
        // matrix enumerate bits i_1..i_j (i_1 most significant).
        const Index rows = c.rows() / 2;
        const Index chi_prev = c.cols();
        MatrixXcd mmat(rows, 2 * chi_prev);
        for (Index l = 0; l < rows; ++l)
            for (Index i = 0; i < 2; ++i)
                for (Index p = 0; p < chi_prev; ++p)
                    mmat(l, i * chi_prev + p) = c(2 * l + i, p);

        Eigen::JacobiSVD<MatrixXcd> svd(mmat, Eigen::ComputeThinU | Eigen::ComputeThinV);
        MatrixXcd u = svd.matrixU();
        MatrixXcd vdag = svd.matrixV().adjoint();
        const auto& sig = svd.singularValues();

        Index keep = std::min<Index>(Index(chi), sig.size());
        // Also drop numerically-zero tails; their weight joins the error sum.
        while (keep > 1 && sig(keep - 1) <= 1e-14 * sig(0)) --keep;
        for (Index k = keep; k < sig.size(); ++k) discarded += sig(k) * sig(k);
        for (Index k = 0; k < keep; ++k) fix_sign(u, vdag, k);

        MpsTensor& site = out.sites[j - 1];
        site.chi_l = std::size_t(keep);
        site.chi_r = std::size_t(chi_prev);
        site.data.resize(site.chi_l * 2 * site.chi_r);
        for (Index b = 0; b < keep; ++b)
            for (Index i = 0; i < 2; ++i)
                for (Index p = 0; p < chi_prev; ++p)
                    site.data[std::size_t((b * 2 + i) * chi_prev + p)] =
                        vdag(b, i * chi_prev + p);

        c = u.leftCols(keep) * sig.head(keep).asDiagonal();
    }

    // Leftmost site: renormalize to absorb the truncation deficit.
    MpsTensor& first = out.sites[0];
    first.chi_l = 1;
    first.chi_r = std::size_t(c.cols());
    first.data.resize(2 * first.chi_r);
    double rem = 0.0;
    for (Index i = 0; i < 2; ++i)
        for (Index p = 0; p < c.cols(); ++p) rem += std::norm(c(i, p));
    const double scale = 1.0 / std::sqrt(rem);
    for (Index i = 0; i < 2; ++i)
        for (Index p = 0; p < c.cols(); ++p)
            first.data[std::size_t(i * c.cols() + p)] = c(i, p) * scale;

    return {std::move(out), discarded};
}

std::vector<cplx> complete_to_unitary(const std::vector<cplx>& columns,
                                      std::size_t dim) {
    if (dim == 0 || columns.size() % dim != 0)
        throw std::invalid_argument("complete_to_unitary: bad column buffer size");
    const std::size_t k = columns.size() / dim;
    if (k > dim) throw std::invalid_argument("complete_to_unitary: too many columns");

    auto col = [&](std::size_t j) { return columns.data() + j * dim; };
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            cplx acc{0.0, 0.0};
            for (std::size_t r = 0; r < dim; ++r) acc += std::conj(col(a)[r]) * col(b)[r];
            const cplx want = a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(acc - want) > 1e-8)
                throw std::invalid_argument(
                    "complete_to_unitary: input columns are not orthonormal");
        }

    std::vector<cplx> u(columns);
    u.resize(dim * dim);
    std::size_t have = k;
    for (std::size_t cand = 0; cand < dim && have < dim; ++cand) {
        std::vector<cplx> w(dim, cplx{0.0, 0.0});
        w[cand] = 1.0;
        // Two MGS passes keep the completion orthonormal to working precision.
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < have; ++j) {
                cplx ov{0.0, 0.0};
                for (std::size_t r = 0; r < dim; ++r) ov += std::conj(u[j * dim + r]) * w[r];
                for (std::size_t r = 0; r < dim; ++r) w[r] -= ov * u[j * dim + r];
            }
        double nrm = 0.0;
        for (const cplx& a : w) nrm += std::norm(a);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (std::size_t r = 0; r < dim; ++r) u[have * dim + r] = w[r] / nrm;
        ++have;
    }
    if (have < dim)
        throw std::invalid_argument("complete_to_unitary: completion basis exhausted");
    return u;
}

Circuit mps_to_circuit(const MpsTensors& tensors) {
    check_canonical(tensors, 1e-8);
    const std::uint32_t m = std::uint32_t(tensors.sites.size());
    const std::size_t chi = max_bond(tensors);
    const std::uint32_t n_bond = chi > 1 ? std::uint32_t(std::bit_width(chi - 1)) : 0;
    const std::size_t dim = std::size_t{1} << (n_bond + 1);

    Circuit c(m + n_bond);
    for (std::uint32_t j = 0; j < m; ++j) {
        const MpsTensor& site = tensors.sites[j];
        // Columns of the site unitary at bond input b with the physical
        // qubit in |0>:  U |b>|0> = sum_{b',i} A^{(i)}[b,b'] |b'>|i>.
        // The physical qubit is the unitary's least significant bit.
        std::vector<cplx> cols(site.chi_l * dim, cplx{0.0, 0.0});
        for (std::size_t b = 0; b < site.chi_l; ++b)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t bp = 0; bp < site.chi_r; ++bp)
                    cols[b * dim + 2 * bp + i] = site.data[(b * 2 + i) * site.chi_r + bp];
        std::vector<cplx> lead = complete_to_unitary(cols, dim);
        // Scatter: specified column b belongs at input index |b>|0> = 2b;
        // the completion fills the remaining input slots in index order.
        std::vector<cplx> u(dim * dim);
        std::size_t next = site.chi_l;
        for (std::size_t in = 0; in < dim; ++in) {
            const std::size_t src =
                (in % 2 == 0 && in / 2 < site.chi_l) ? in / 2 : next++;
            std::copy_n(lead.data() + src * dim, dim, u.data() + in * dim);
        }
        std::vector<std::uint32_t> qubits;
        qubits.push_back(m - 1 - j);  // site 0 holds the most significant bit
        for (std::uint32_t b = 0; b < n_bond; ++b) qubits.push_back(m + b);
        append_unitary(c, u, qubits);
    }
    return c;
}

EncodeResult encode_mps(const std::vector<cplx>& v, std::size_t bond_dim,
                        bool validate, double tol) {
    if (v.empty()) throw std::invalid_argument("MPS: empty vector");
    std::size_t n = std::max<std::size_t>(2, std::bit_ceil(v.size()));
    std::vector<cplx> padded(v);
    const std::size_t n_padded = n - v.size();
    padded.resize(n, cplx{0.0, 0.0});

    double norm_sq = 0.0;
    for (const cplx& a : padded) norm_sq += std::norm(a);
    if (norm_sq == 0.0) throw std::invalid_argument("MPS: zero vector");
    std::vector<cplx> target(padded);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (cplx& a : target) a *= inv;

    auto [tensors, err] = mps_decompose(padded, bond_dim);
    return finish(tensors, err, n_padded, bond_dim, validate, tol, &target);
}

EncodeResult encode_mps_from_tensors(const MpsTensors& tensors) {
    if (tensors.sites.empty()) throw std::invalid_argument("MPS: no site tensors");
    return finish(tensors, 0.0, 0, std::max<std::size_t>(1, max_bond(tensors)),
                  false, 0.0, nullptr);
}

}  // namespace qencode
