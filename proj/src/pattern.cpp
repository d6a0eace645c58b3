#include "qencode/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qencode {

namespace {

std::shared_ptr<PatternNode> make_node(PatternNode::Tag tag) {
    auto n = std::make_shared<PatternNode>();
    n->tag = tag;
    return n;
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool near(cplx a, double b) { return std::abs(a - b) <= 1e-12; }

// Geometric series Sum_{k=0}^{w-1} q^k for real q >= 0.
double geo_series(double q, double w) {
    if (std::abs(q - 1.0) < 1e-15) return w;
    return (1.0 - std::pow(q, w)) / (1.0 - q);
}

double binom(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int complexity_rank(const std::string& s) {
    if (s == "O(m)") return 1;
    if (s == "O(s*m)") return 2;
    if (s == "O(k*(m-k))") return 3;
    if (s == "O(L*m)") return 3;
    if (s == "O(m^2)") return 4;
    return 5;
}

}  // namespace

// --- factories ---------------------------------------------------------

Pattern Pattern::sparse(std::vector<std::pair<std::uint64_t, cplx>> entries) {
    auto n = make_node(PatternNode::Tag::Sparse);
    n->sparse.entries = std::move(entries);
    return Pattern(n);
}
Pattern Pattern::step(std::uint64_t k_e, cplx c) {
    auto n = make_node(PatternNode::Tag::Step);
    n->step = {k_e, c};
    return Pattern(n);
}
Pattern Pattern::square(std::uint64_t k_s, std::uint64_t k_e, cplx c) {
    auto n = make_node(PatternNode::Tag::Square);
    n->square = {k_s, k_e, c};
    return Pattern(n);
}
Pattern Pattern::walsh(std::uint32_t k, cplx c0, cplx c1) {
    auto n = make_node(PatternNode::Tag::Walsh);
    n->walsh = {k, c0, c1};
    return Pattern(n);
}
Pattern Pattern::fourier(std::vector<std::tuple<std::uint64_t, double, double>> modes) {
    auto n = make_node(PatternNode::Tag::Fourier);
    for (auto& [nn, a, p] : modes) n->fourier.modes.push_back({nn, a, p});
    return Pattern(n);
}
Pattern Pattern::geometric(cplx r, std::uint64_t k_s, cplx c) {
    auto n = make_node(PatternNode::Tag::Geometric);
    n->geometric = {r, k_s, c};
    return Pattern(n);
}
Pattern Pattern::hamming(cplx r, cplx c) {
    auto n = make_node(PatternNode::Tag::Hamming);
    n->hamming = {r, c};
    return Pattern(n);
}
Pattern Pattern::staircase(cplx r, cplx c) {
    auto n = make_node(PatternNode::Tag::Staircase);
    n->staircase = {r, c};
    return Pattern(n);
}
Pattern Pattern::dicke(std::uint32_t k, double c) {
    auto n = make_node(PatternNode::Tag::Dicke);
    n->dicke = {k, c};
    return Pattern(n);
}
Pattern Pattern::polynomial(std::vector<cplx> coeffs) {
    auto n = make_node(PatternNode::Tag::Polynomial);
    n->polynomial.coeffs = std::move(coeffs);
    return Pattern(n);
}
Pattern Pattern::sum(std::vector<std::pair<cplx, Pattern>> terms) {
    auto n = make_node(PatternNode::Tag::Sum);
    n->sum.terms = std::move(terms);
    return Pattern(n);
}
Pattern Pattern::partition(std::vector<Pattern> parts) {
    auto n = make_node(PatternNode::Tag::Partition);
    n->partition.parts = std::move(parts);
    return Pattern(n);
}
Pattern Pattern::tensor(std::vector<std::pair<Pattern, std::uint64_t>> parts) {
    auto n = make_node(PatternNode::Tag::Tensor);
    n->tensor.parts = std::move(parts);
    return Pattern(n);
}

std::string Pattern::name() const {
    switch (node_->tag) {
        case PatternNode::Tag::Sparse: return "SPARSE";
        case PatternNode::Tag::Step: return "STEP";
        case PatternNode::Tag::Square: return "SQUARE";
        case PatternNode::Tag::Walsh: return "WALSH";
        case PatternNode::Tag::Fourier: return "FOURIER";
        case PatternNode::Tag::Geometric: return "GEOMETRIC";
        case PatternNode::Tag::Hamming: return "HAMMING";
        case PatternNode::Tag::Staircase: return "STAIRCASE";
        case PatternNode::Tag::Dicke: return "DICKE";
        case PatternNode::Tag::Polynomial: return "POLYNOMIAL";
        case PatternNode::Tag::Sum: return "SUM";
        case PatternNode::Tag::Partition: return "PARTITION";
        case PatternNode::Tag::Tensor: return "TENSOR";
    }
    return "?";
}

bool Pattern::is_composition() const {
    switch (node_->tag) {
        case PatternNode::Tag::Sum:
        case PatternNode::Tag::Partition:
        case PatternNode::Tag::Tensor:
            return true;
        default:
            return false;
    }
}

bool Pattern::is_bounded_support() const {
    switch (node_->tag) {
        case PatternNode::Tag::Sparse:
        case PatternNode::Tag::Step:
        case PatternNode::Tag::Square:
        case PatternNode::Tag::Geometric:
            return true;
        default:
            return false;
    }
}

// --- support ------------------------------------------------------------

bool Support::contains(std::uint64_t i) const {
    switch (kind) {
        case Kind::Full: return true;
        case Kind::Interval: return i >= lo && i < hi;
        case Kind::IndexSet: return std::binary_search(indices.begin(), indices.end(), i);
    }
    return true;
}

bool Support::disjoint_with(const Support& other) const {
    if (kind == Kind::Full || other.kind == Kind::Full) return false;
    if (kind == Kind::Interval && other.kind == Kind::Interval)
        return hi <= other.lo || other.hi <= lo;
    const Support& set = (kind == Kind::IndexSet) ? *this : other;
    const Support& box = (kind == Kind::IndexSet) ? other : *this;
    for (auto i : set.indices)
        if (box.contains(i)) return false;
    return true;
}

Support support(const Pattern& p, std::uint64_t N) {
    const PatternNode& n = p.node();
    Support s;
    switch (n.tag) {
        case PatternNode::Tag::Step:
            s.kind = Support::Kind::Interval;
            s.lo = 0;
            s.hi = n.step.k_e;
            break;
        case PatternNode::Tag::Square:
            s.kind = Support::Kind::Interval;
            s.lo = n.square.k_s;
            s.hi = n.square.k_e;
            break;
        case PatternNode::Tag::Geometric:
            s.kind = Support::Kind::Interval;
            s.lo = n.geometric.k_s;
            s.hi = N;
            break;
        case PatternNode::Tag::Sparse:
            s.kind = Support::Kind::IndexSet;
            for (auto& [i, a] : n.sparse.entries) s.indices.push_back(i);
            std::sort(s.indices.begin(), s.indices.end());
            break;
        default:
            s.kind = Support::Kind::Full;
            break;
    }
    return s;
}

// --- validation ---------------------------------------------------------

std::uint32_t qubits_for(std::uint64_t N) {
    if (N < 2 || (N & (N - 1)) != 0) fail("N must be a power of two >= 2");
    return static_cast<std::uint32_t>(std::countr_zero(N));
}

namespace {

void check_ratio(cplx r, const char* family) {
    if (std::abs(r) < 1e-12) fail(std::string(family) + ": r must be nonzero");
    if (near(r, 1.0)) fail(std::string(family) + ": r must not equal 1");
}

void validate_leaf_or_fail(const Pattern& p, std::uint64_t N, const char* where) {
    if (p.is_composition())
        fail(std::string(where) + ": nested compositions are not supported");
    validate_params(p, N);
}

}  // namespace

void validate_params(const Pattern& p, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    const PatternNode& n = p.node();
    switch (n.tag) {
        case PatternNode::Tag::Sparse: {
            if (n.sparse.entries.empty()) fail("SPARSE: needs at least one entry");
            std::vector<std::uint64_t> idx;
            for (auto& [i, a] : n.sparse.entries) {
                if (i >= N) fail("SPARSE: index out of range");
                if (std::abs(a) == 0.0) fail("SPARSE: amplitudes must be nonzero");
                idx.push_back(i);
            }
            std::sort(idx.begin(), idx.end());
            if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
                fail("SPARSE: indices must be distinct");
            break;
        }
        case PatternNode::Tag::Step:
            if (n.step.k_e < 1 || n.step.k_e > N) fail("STEP: need 1 <= k_e <= N");
            if (std::abs(n.step.c) == 0.0) fail("STEP: c must be nonzero");
            break;
        case PatternNode::Tag::Square:
            if (n.square.k_s >= n.square.k_e || n.square.k_e > N)
                fail("SQUARE: need 0 <= k_s < k_e <= N");
            if (std::abs(n.square.c) == 0.0) fail("SQUARE: c must be nonzero");
            break;
        case PatternNode::Tag::Walsh:
            if (n.walsh.k >= m) fail("WALSH: need 0 <= k < m");
            if (std::abs(n.walsh.c0) == 0.0 && std::abs(n.walsh.c1) == 0.0)
                fail("WALSH: c0 and c1 cannot both be zero");
            break;
        case PatternNode::Tag::Fourier:
            if (n.fourier.modes.empty()) fail("FOURIER: needs at least one mode");
            for (auto& mo : n.fourier.modes) {
                if (mo.n < 1 || 2 * mo.n >= N) fail("FOURIER: need 1 <= n < N/2");
                if (mo.A == 0.0) fail("FOURIER: amplitudes must be nonzero");
            }
            break;
        case PatternNode::Tag::Geometric:
            check_ratio(n.geometric.r, "GEOMETRIC");
            if (n.geometric.k_s >= N) fail("GEOMETRIC: need 0 <= k_s < N");
            if (std::abs(n.geometric.c) == 0.0) fail("GEOMETRIC: c must be nonzero");
            break;
        case PatternNode::Tag::Hamming:
            check_ratio(n.hamming.r, "HAMMING");
            if (std::abs(n.hamming.c) == 0.0) fail("HAMMING: c must be nonzero");
            break;
        case PatternNode::Tag::Staircase:
            check_ratio(n.staircase.r, "STAIRCASE");
            if (std::abs(n.staircase.c) == 0.0) fail("STAIRCASE: c must be nonzero");
            break;
        case PatternNode::Tag::Dicke:
            if (n.dicke.k > m) fail("DICKE: need 0 <= k <= m");
            if (!(n.dicke.c > 0.0)) fail("DICKE: c must be positive");
            break;
        case PatternNode::Tag::Polynomial: {
            if (n.polynomial.coeffs.empty()) fail("POLYNOMIAL: needs coefficients");
            bool any = false;
            for (auto c : n.polynomial.coeffs) any = any || std::abs(c) != 0.0;
            if (!any) fail("POLYNOMIAL: the zero polynomial cannot be encoded");
            break;
        }
        case PatternNode::Tag::Sum: {
            if (n.sum.terms.empty()) fail("SUM: needs at least one term");
            for (auto& [w, q] : n.sum.terms) {
                if (std::abs(w) == 0.0) fail("SUM: weights must be nonzero");
                validate_leaf_or_fail(q, N, "SUM");
            }
            break;
        }
        case PatternNode::Tag::Partition: {
            if (n.partition.parts.empty()) fail("PARTITION: needs at least one part");
            std::vector<Support> sups;
            for (auto& q : n.partition.parts) {
                if (!q.is_bounded_support())
                    fail("PARTITION: only bounded-support parts "
                         "(SPARSE/STEP/SQUARE/GEOMETRIC) are allowed");
                validate_leaf_or_fail(q, N, "PARTITION");
                sups.push_back(support(q, N));
            }
            for (std::size_t a = 0; a < sups.size(); ++a)
                for (std::size_t b = a + 1; b < sups.size(); ++b)
                    if (!sups[a].disjoint_with(sups[b]))
                        fail("PARTITION: part supports overlap; use SUM for "
                             "overlapping components");
            break;
        }
        case PatternNode::Tag::Tensor: {
            if (n.tensor.parts.empty()) fail("TENSOR: needs at least one part");
            std::uint64_t prod = 1;
            for (auto& [q, Ni] : n.tensor.parts) {
                std::uint32_t mi = qubits_for(Ni);
                if (prod > N / Ni) fail("TENSOR: subregister sizes exceed N");
                prod *= Ni;
                (void)mi;
                validate_leaf_or_fail(q, Ni, "TENSOR");
            }
            if (prod != N) fail("TENSOR: product of subregister sizes must equal N");
            break;
        }
    }
}

// --- amplitudes ---------------------------------------------------------

cplx amp_at(const Pattern& p, std::uint64_t N, std::uint64_t i) {
    const PatternNode& n = p.node();
    switch (n.tag) {
        case PatternNode::Tag::Sparse:
            for (auto& [j, a] : n.sparse.entries)
                if (j == i) return a;
            return 0.0;
        case PatternNode::Tag::Step:
            return i < n.step.k_e ? n.step.c : 0.0;
        case PatternNode::Tag::Square:
            return (i >= n.square.k_s && i < n.square.k_e) ? n.square.c : 0.0;
        case PatternNode::Tag::Walsh:
            return ((i >> n.walsh.k) & 1) ? n.walsh.c1 : n.walsh.c0;
        case PatternNode::Tag::Fourier: {
            double v = 0.0;
            for (auto& mo : n.fourier.modes)
                v += mo.A * std::sin(2.0 * std::numbers::pi * double(mo.n) * double(i) /
                                         double(N) +
                                     mo.phi);
            return v;
        }
        case PatternNode::Tag::Geometric:
            if (i < n.geometric.k_s) return 0.0;
            return n.geometric.c *
                   std::pow(n.geometric.r, double(i - n.geometric.k_s));
        case PatternNode::Tag::Hamming:
            return n.hamming.c * std::pow(n.hamming.r, double(std::popcount(i)));
        case PatternNode::Tag::Staircase: {
            if ((i & (i + 1)) != 0) return 0.0;  // i must be 2^k - 1
            return n.staircase.c * std::pow(n.staircase.r, double(std::popcount(i)));
        }
        case PatternNode::Tag::Dicke:
            return std::popcount(i) == n.dicke.k ? cplx(n.dicke.c) : 0.0;
        case PatternNode::Tag::Polynomial: {
            const double x = double(i) / double(N - 1);
            cplx v = 0.0;
            double xp = 1.0;
            for (auto c : n.polynomial.coeffs) {
                v += c * xp;
                xp *= x;
            }
            return v;
        }
        case PatternNode::Tag::Sum: {
            cplx v = 0.0;
            for (auto& [w, q] : n.sum.terms) v += w * amp_at(q, N, i);
            return v;
        }
        case PatternNode::Tag::Partition: {
            cplx v = 0.0;
            for (auto& q : n.partition.parts) v += amp_at(q, N, i);
            return v;
        }
        case PatternNode::Tag::Tensor: {
            std::uint32_t total = qubits_for(N);
            cplx v = 1.0;
            std::uint32_t shift = total;
            for (auto& [q, Ni] : n.tensor.parts) {
                std::uint32_t mi = qubits_for(Ni);
                shift -= mi;
                v *= amp_at(q, Ni, (i >> shift) & (Ni - 1));
            }
            return v;
        }
    }
    return 0.0;
}

double pattern_norm(const Pattern& p, std::uint64_t N) {
    const std::uint32_t m = qubits_for(N);
    const PatternNode& n = p.node();
    switch (n.tag) {
        case PatternNode::Tag::Sparse: {
            double s = 0.0;
            for (auto& [i, a] : n.sparse.entries) s += std::norm(a);
            return std::sqrt(s);
        }
        case PatternNode::Tag::Step:
            return std::abs(n.step.c) * std::sqrt(double(n.step.k_e));
        case PatternNode::Tag::Square:
            return std::abs(n.square.c) * std::sqrt(double(n.square.k_e - n.square.k_s));
        case PatternNode::Tag::Walsh:
            return std::sqrt(double(N) / 2.0 *
                             (std::norm(n.walsh.c0) + std::norm(n.walsh.c1)));
        case PatternNode::Tag::Fourier: {
            // Modes at distinct frequencies are orthogonal over a full period.
            double s = 0.0;
            for (auto& a : n.fourier.modes)
                for (auto& b : n.fourier.modes)
                    if (a.n == b.n) s += a.A * b.A * std::cos(a.phi - b.phi);
            return std::sqrt(s * double(N) / 2.0);
        }
        case PatternNode::Tag::Geometric: {
            const double q = std::norm(n.geometric.r);
            const double w = double(N - n.geometric.k_s);
            return std::abs(n.geometric.c) * std::sqrt(geo_series(q, w));
        }
        case PatternNode::Tag::Hamming:
            return std::abs(n.hamming.c) *
                   std::pow(1.0 + std::norm(n.hamming.r), double(m) / 2.0);
        case PatternNode::Tag::Staircase: {
            const double q = std::norm(n.staircase.r);
            return std::abs(n.staircase.c) * std::sqrt(geo_series(q, double(m) + 1.0));
        }
        case PatternNode::Tag::Dicke:
            return n.dicke.c * std::sqrt(binom(m, n.dicke.k));
        case PatternNode::Tag::Partition: {
            double s = 0.0;
            for (auto& q : n.partition.parts) {
                double v = pattern_norm(q, N);
                s += v * v;
            }
            return std::sqrt(s);
        }
        case PatternNode::Tag::Tensor: {
            double v = 1.0;
            for (auto& [q, Ni] : n.tensor.parts) v *= pattern_norm(q, Ni);
            return v;
        }
        default: {
            // Polynomial and SUM: stream the amplitudes without materializing.
            double s = 0.0;
            for (std::uint64_t i = 0; i < N; ++i) s += std::norm(amp_at(p, N, i));
            return std::sqrt(s);
        }
    }
}

std::vector<cplx> build_vector(const Pattern& p, std::uint64_t N) {
    validate_params(p, N);
    std::vector<cplx> v(N);
    double s = 0.0;
    for (std::uint64_t i = 0; i < N; ++i) {
        v[i] = amp_at(p, N, i);
        s += std::norm(v[i]);
    }
    if (s < 1e-300) fail("pattern amplitudes vanish everywhere on the grid");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : v) a *= inv;
    return v;
}

// --- complexity ---------------------------------------------------------

std::string complexity_string(const Pattern& p, std::uint64_t N) {
    const PatternNode& n = p.node();
    switch (n.tag) {
        case PatternNode::Tag::Sparse: return "O(s*m)";
        case PatternNode::Tag::Step: return "O(m)";
        case PatternNode::Tag::Square: {
            const std::uint64_t w = n.square.k_e - n.square.k_s;
            const bool aligned = (w & (w - 1)) == 0 && n.square.k_s % w == 0;
            return (n.square.k_s == 0 || aligned) ? "O(m)" : "O(m^2)";
        }
        case PatternNode::Tag::Walsh: return "O(m)";
        case PatternNode::Tag::Fourier: return "O(m^2)";
        case PatternNode::Tag::Geometric:
            return n.geometric.k_s == 0 ? "O(m)" : "O(m^2)";
        case PatternNode::Tag::Hamming: return "O(m)";
        case PatternNode::Tag::Staircase: return "O(m)";
        case PatternNode::Tag::Dicke: return "O(k*(m-k))";
        case PatternNode::Tag::Polynomial: {
            const std::size_t d = n.polynomial.coeffs.size() - 1;
            if (d == 0) return "O(m)";
            if (d == 1) return "O(m^2)";
            return "O(m^" + std::to_string(d + 1) + ")";
        }
        case PatternNode::Tag::Sum: return "O(r*m^2)";
        case PatternNode::Tag::Partition: return "O(L*m)";
        case PatternNode::Tag::Tensor: {
            std::string best = "O(m)";
            for (auto& [q, Ni] : n.tensor.parts) {
                std::string s = complexity_string(q, Ni);
                if (complexity_rank(s) > complexity_rank(best)) best = s;
            }
            return best;
        }
    }
    return "O(m)";
}

}  // namespace qencode
