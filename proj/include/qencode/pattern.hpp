#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qencode/su2.hpp"

namespace qencode {

struct PatternNode;

// Value-semantics handle to an immutable pattern tree.
class Pattern {
  public:
    Pattern() = default;

    static Pattern sparse(std::vector<std::pair<std::uint64_t, cplx>> entries);
    static Pattern step(std::uint64_t k_e, cplx c = 1.0);
    static Pattern square(std::uint64_t k_s, std::uint64_t k_e, cplx c = 1.0);
    static Pattern walsh(std::uint32_t k, cplx c0, cplx c1);
    static Pattern fourier(std::vector<std::tuple<std::uint64_t, double, double>> modes);
    static Pattern geometric(cplx r, std::uint64_t k_s = 0, cplx c = 1.0);
    static Pattern hamming(cplx r, cplx c = 1.0);
    static Pattern staircase(cplx r, cplx c = 1.0);
    static Pattern dicke(std::uint32_t k, double c = 1.0);
    static Pattern polynomial(std::vector<cplx> coeffs);
    static Pattern sum(std::vector<std::pair<cplx, Pattern>> terms);
    static Pattern partition(std::vector<Pattern> parts);
    static Pattern tensor(std::vector<std::pair<Pattern, std::uint64_t>> parts);

    const PatternNode& node() const { return *node_; }
    bool empty() const { return node_ == nullptr; }

    // Upper-case family name as reported in EncodingInfo, e.g. "SPARSE".
    std::string name() const;
    bool is_composition() const;
    // Families whose nonzero entries are an interval or an index set.
    bool is_bounded_support() const;

  private:
    explicit Pattern(std::shared_ptr<const PatternNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const PatternNode> node_;
};

struct FourierMode {
    std::uint64_t n;
    double A;
    double phi;
};

struct SparseP { std::vector<std::pair<std::uint64_t, cplx>> entries; };
struct StepP { std::uint64_t k_e; cplx c; };
struct SquareP { std::uint64_t k_s, k_e; cplx c; };
struct WalshP { std::uint32_t k; cplx c0, c1; };
struct FourierP { std::vector<FourierMode> modes; };
struct GeometricP { cplx r; std::uint64_t k_s; cplx c; };
struct HammingP { cplx r; cplx c; };
struct StaircaseP { cplx r; cplx c; };
struct DickeP { std::uint32_t k; double c; };
struct PolynomialP { std::vector<cplx> coeffs; };
struct SumP { std::vector<std::pair<cplx, Pattern>> terms; };
struct PartitionP { std::vector<Pattern> parts; };
struct TensorP { std::vector<std::pair<Pattern, std::uint64_t>> parts; };

// Threshold below which an imaginary part is treated as zero (the switch
// between the real and complex synthesis paths).
inline constexpr double kImagEps = 1e-12;

inline bool is_complex(cplx z) { return std::abs(z.imag()) > kImagEps; }

struct Support {
    enum class Kind { Interval, IndexSet, Full };
    Kind kind = Kind::Full;
    std::uint64_t lo = 0, hi = 0;           // [lo, hi) when kind == Interval
    std::vector<std::uint64_t> indices;     // sorted, when kind == IndexSet

    bool disjoint_with(const Support& other) const;
    bool contains(std::uint64_t i) const;
};

// N must be a power of two >= 2; returns m = log2(N).
std::uint32_t qubits_for(std::uint64_t N);

// Throws std::invalid_argument naming the violated constraint.
void validate_params(const Pattern& p, std::uint64_t N);

Support support(const Pattern& p, std::uint64_t N);

// Amplitude of the *unnormalized* declared vector at index i.
cplx amp_at(const Pattern& p, std::uint64_t N, std::uint64_t i);

// L2 norm of the unnormalized vector, from closed forms where they exist.
double pattern_norm(const Pattern& p, std::uint64_t N);

// The normalized analytic amplitude vector.
std::vector<cplx> build_vector(const Pattern& p, std::uint64_t N);

// Asymptotic cost string reported in EncodingInfo, e.g. "O(m)".
std::string complexity_string(const Pattern& p, std::uint64_t N);

struct PatternNode {
    // Discriminated by index; order matches the factory list above.
    enum class Tag {
        Sparse, Step, Square, Walsh, Fourier, Geometric,
        Hamming, Staircase, Dicke, Polynomial, Sum, Partition, Tensor,
    };
    Tag tag;
    SparseP sparse;
    StepP step;
    SquareP square;
    WalshP walsh;
    FourierP fourier;
    GeometricP geometric;
    HammingP hamming;
    StaircaseP staircase;
    DickeP dicke;
    PolynomialP polynomial;
    SumP sum;
    PartitionP partition;
    TensorP tensor;
};

}  // namespace qencode
