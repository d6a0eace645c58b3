#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qencode/pattern.hpp"

using namespace qencode;

namespace {

double brute_norm(const Pattern& p, std::uint64_t N) {
    double s = 0.0;
    for (std::uint64_t i = 0; i < N; ++i) s += std::norm(amp_at(p, N, i));
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("qubits_for") {
    CHECK(qubits_for(2) == 1);
    CHECK(qubits_for(8) == 3);
    CHECK(qubits_for(1024) == 10);
    CHECK_THROWS_AS(qubits_for(12), std::invalid_argument);
    CHECK_THROWS_AS(qubits_for(1), std::invalid_argument);
    CHECK_THROWS_AS(qubits_for(0), std::invalid_argument);
}

TEST_CASE("parameter validation rejects out-of-contract inputs") {
    const std::uint64_t N = 16;
    CHECK_THROWS(validate_params(Pattern::sparse({}), N));
    CHECK_THROWS(validate_params(Pattern::sparse({{16, 1.0}}), N));
    CHECK_THROWS(validate_params(Pattern::sparse({{3, 1.0}, {3, 2.0}}), N));
    CHECK_THROWS(validate_params(Pattern::sparse({{3, 0.0}}), N));
    CHECK_THROWS(validate_params(Pattern::step(0), N));
    CHECK_THROWS(validate_params(Pattern::step(17), N));
    CHECK_THROWS(validate_params(Pattern::square(5, 5), N));
    CHECK_THROWS(validate_params(Pattern::square(0, 17), N));
    CHECK_THROWS(validate_params(Pattern::walsh(4, 1.0, 2.0), N));
    CHECK_THROWS(validate_params(Pattern::fourier({{8, 1.0, 0.0}}), N));
    CHECK_THROWS(validate_params(Pattern::fourier({{0, 1.0, 0.0}}), N));
    CHECK_THROWS(validate_params(Pattern::geometric(1.0), N));
    CHECK_THROWS(validate_params(Pattern::geometric(0.0), N));
    CHECK_THROWS(validate_params(Pattern::geometric(0.5, 16), N));
    CHECK_THROWS(validate_params(Pattern::dicke(5), N));
    CHECK_THROWS(validate_params(Pattern::polynomial({}), N));
    CHECK_THROWS(validate_params(Pattern::polynomial({0.0, 0.0}), N));
    CHECK_THROWS(validate_params(Pattern::sum({}), N));
    CHECK_THROWS(validate_params(Pattern::sum({{0.0, Pattern::step(3)}}), N));
    // Nested compositions are rejected.
    CHECK_THROWS(validate_params(
        Pattern::sum({{1.0, Pattern::sum({{1.0, Pattern::step(3)}})}}), N));
    // Partition parts must have bounded, pairwise disjoint support.
    CHECK_THROWS(validate_params(
        Pattern::partition({Pattern::step(4), Pattern::square(2, 6)}), N));
    CHECK_THROWS(validate_params(Pattern::partition({Pattern::hamming(0.5)}), N));
    CHECK_NOTHROW(validate_params(
        Pattern::partition({Pattern::step(4), Pattern::square(4, 9),
                            Pattern::sparse({{12, 1.0}})}),
        N));
    // Tensor widths must multiply out to N.
    CHECK_THROWS(validate_params(
        Pattern::tensor({{Pattern::step(2), 4}, {Pattern::step(2), 2}}), N));
    CHECK_NOTHROW(validate_params(
        Pattern::tensor({{Pattern::step(3), 4}, {Pattern::walsh(0, 1.0, 2.0), 4}}), N));
    CHECK_THROWS(validate_params(
        Pattern::tensor({{Pattern::sum({{1.0, Pattern::step(2)}}), 4},
                         {Pattern::step(2), 4}}),
        N));
}

TEST_CASE("amplitudes match the declared families") {
    const std::uint64_t N = 32;
    SUBCASE("step / square are indicator functions") {
        auto st = Pattern::step(9, {2.0, 1.0});
        for (std::uint64_t i = 0; i < N; ++i)
            CHECK(amp_at(st, N, i) == (i < 9 ? cplx{2.0, 1.0} : cplx{0.0}));
        auto sq = Pattern::square(5, 12);
        for (std::uint64_t i = 0; i < N; ++i)
            CHECK(amp_at(sq, N, i) == ((i >= 5 && i < 12) ? cplx{1.0} : cplx{0.0}));
    }
    SUBCASE("walsh depends on a single bit") {
        auto w = Pattern::walsh(2, {1.0, 0.0}, {0.0, 3.0});
        CHECK(amp_at(w, N, 3) == cplx{1.0, 0.0});
        CHECK(amp_at(w, N, 4) == cplx{0.0, 3.0});
        CHECK(amp_at(w, N, 11) == cplx{1.0, 0.0});
    }
    SUBCASE("fourier is a sum of sampled sines") {
        auto f = Pattern::fourier({{1, 1.0, 0.0}, {3, 0.5, 1.1}});
        for (std::uint64_t i = 0; i < N; ++i) {
            const double x = 2.0 * std::numbers::pi * double(i) / double(N);
            const double want = std::sin(x) + 0.5 * std::sin(3.0 * x + 1.1);
            CHECK(std::abs(amp_at(f, N, i) - cplx(want)) < 1e-12);
        }
    }
    SUBCASE("geometric with offset") {
        auto g = Pattern::geometric(0.5, 3);
        CHECK(amp_at(g, N, 2) == cplx{0.0});
        CHECK(amp_at(g, N, 3) == cplx{1.0});
        CHECK(std::abs(amp_at(g, N, 7) - cplx(0.0625)) < 1e-15);
    }
    SUBCASE("hamming / dicke depend on popcount") {
        auto h = Pattern::hamming(0.3);
        CHECK(std::abs(amp_at(h, N, 0b10110) - cplx(0.027)) < 1e-15);
        auto d = Pattern::dicke(2);
        CHECK(amp_at(d, N, 0b00011) == cplx{1.0});
        CHECK(amp_at(d, N, 0b00111) == cplx{0.0});
    }
    SUBCASE("staircase lives on indices 2^k - 1") {
        auto s = Pattern::staircase(0.5);
        CHECK(amp_at(s, N, 0) == cplx{1.0});
        CHECK(amp_at(s, N, 1) == cplx{0.5});
        CHECK(amp_at(s, N, 2) == cplx{0.0});
        CHECK(amp_at(s, N, 3) == cplx{0.25});
        CHECK(amp_at(s, N, 31) == cplx{0.03125});
    }
    SUBCASE("polynomial is evaluated on the unit grid") {
        auto p = Pattern::polynomial({1.0, -2.0, 0.5});
        for (std::uint64_t i = 0; i < N; ++i) {
            const double x = double(i) / double(N - 1);
            CHECK(std::abs(amp_at(p, N, i) - cplx(1.0 - 2.0 * x + 0.5 * x * x)) < 1e-12);
        }
    }
    SUBCASE("tensor puts its first part on the high qubits") {
        auto t = Pattern::tensor({{Pattern::walsh(0, 1.0, 2.0), 2},
                                  {Pattern::step(3), 16}});
        // index = (hi << 4) | lo
        CHECK(amp_at(t, N, (1ull << 4) | 2) == cplx{2.0});
        CHECK(amp_at(t, N, 2) == cplx{1.0});
        CHECK(amp_at(t, N, (1ull << 4) | 5) == cplx{0.0});
    }
}

TEST_CASE("closed-form norms agree with brute force") {
    const std::uint64_t N = 64;
    std::vector<Pattern> ps = {
        Pattern::sparse({{3, {1.0, 2.0}}, {40, -0.5}}),
        Pattern::step(23, {0.0, 1.5}),
        Pattern::square(10, 33, 2.0),
        Pattern::walsh(4, {1.0, 1.0}, 0.5),
        Pattern::fourier({{2, 1.0, 0.3}, {7, 0.25, -1.0}, {2, 0.5, 1.0}}),
        Pattern::geometric(std::polar(0.9, 0.7), 5),
        Pattern::geometric(0.5),
        Pattern::hamming({0.4, 0.2}),
        Pattern::staircase({0.0, 0.8}),
        Pattern::dicke(3, 2.0),
        Pattern::polynomial({0.2, 0.0, {0.0, 1.0}}),
        Pattern::sum({{1.0, Pattern::step(5)}, {{0.0, 2.0}, Pattern::hamming(0.5)}}),
        Pattern::partition({Pattern::step(5), Pattern::square(5, 20, {1.0, 1.0})}),
        Pattern::tensor({{Pattern::step(3), 8}, {Pattern::hamming(0.5), 8}}),
    };
    for (const auto& p : ps) {
        CAPTURE(p.name());
        validate_params(p, N);
        CHECK(pattern_norm(p, N) == doctest::Approx(brute_norm(p, N)).epsilon(1e-10));
    }
}

TEST_CASE("build_vector returns a unit vector proportional to amp_at") {
    const std::uint64_t N = 32;
    auto p = Pattern::sum({{2.0, Pattern::step(7)}, {-1.0, Pattern::walsh(1, 1.0, 0.0)}});
    auto v = build_vector(p, N);
    double s = 0.0;
    for (auto a : v) s += std::norm(a);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    const double scale = pattern_norm(p, N);
    for (std::uint64_t i = 0; i < N; ++i)
        CHECK(std::abs(v[i] - amp_at(p, N, i) / scale) < 1e-12);
    // A sum whose terms cancel exactly has no state to prepare.
    auto z = Pattern::sum({{1.0, Pattern::step(4)}, {-1.0, Pattern::step(4)}});
    CHECK_THROWS(build_vector(z, N));
}

TEST_CASE("support bounds the nonzero amplitudes") {
    const std::uint64_t N = 64;
    std::vector<Pattern> ps = {
        Pattern::sparse({{3, 1.0}, {40, -0.5}}),
        Pattern::step(23),
        Pattern::square(10, 33),
        Pattern::geometric(0.5, 12),
        Pattern::staircase(0.5),
        Pattern::dicke(1),
        Pattern::hamming(0.5),
    };
    for (const auto& p : ps) {
        CAPTURE(p.name());
        Support s = support(p, N);
        for (std::uint64_t i = 0; i < N; ++i)
            if (std::abs(amp_at(p, N, i)) > 0.0) CHECK(s.contains(i));
    }
    CHECK(support(Pattern::step(8), N).disjoint_with(support(Pattern::square(8, 20), N)));
    CHECK_FALSE(
        support(Pattern::step(9), N).disjoint_with(support(Pattern::square(8, 20), N)));
}

TEST_CASE("names and composition flags") {
    CHECK(Pattern::step(4).name() == "STEP");
    CHECK(Pattern::sum({{1.0, Pattern::step(4)}}).name() == "SUM");
    CHECK(Pattern::sum({{1.0, Pattern::step(4)}}).is_composition());
    CHECK_FALSE(Pattern::hamming(0.5).is_composition());
    CHECK(Pattern::sparse({{1, 1.0}}).is_bounded_support());
    CHECK_FALSE(Pattern::hamming(0.5).is_bounded_support());
}

TEST_CASE("complexity strings") {
    const std::uint64_t N = 256;
    CHECK(complexity_string(Pattern::hamming(0.5), N) == "O(m)");
    CHECK(complexity_string(Pattern::walsh(2, 1.0, 2.0), N) == "O(m)");
    CHECK(complexity_string(Pattern::step(7), N) == "O(m)");
    CHECK(complexity_string(Pattern::square(3, 9), N) == "O(m^2)");
    CHECK(complexity_string(Pattern::sparse({{1, 1.0}, {7, 2.0}}), N) == "O(s*m)");
    CHECK(complexity_string(Pattern::polynomial({1.0, 2.0}), N) == "O(m^2)");
    CHECK(complexity_string(Pattern::polynomial({1.0}), N) == "O(m)");
    CHECK(complexity_string(Pattern::dicke(3), N) == "O(k*(m-k))");
}
