// Calibration sweep: prints measured transpiled counts used to derive the
// frozen predictor formulas.  Not built by default; compile by hand when
// re-deriving constants.
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include "qencode/synth.hpp"
#include "qencode/transpile.hpp"
using namespace qencode;
static void row(const char* tag, std::uint64_t a, std::uint64_t b, const EncodingInfo& i) {
    std::printf("%s a=%llu b=%llu m=%u 1q=%zu 2q=%zu d=%zu\n", tag,
                (unsigned long long)a, (unsigned long long)b, i.m,
                i.gate_count_1q, i.gate_count_2q, i.circuit_depth);
}
int main(int argc, char** argv) {
    const std::string what = argc > 1 ? argv[1] : "";
    if (what == "step") {
        for (std::uint32_t m = 2; m <= 6; ++m) {
            const std::uint64_t N = 1ull << m;
            for (std::uint64_t ke = 1; ke <= N; ++ke)
                row("step", ke, 0, encode(Pattern::step(ke), N).info);
        }
    } else if (what == "stair") {
        for (std::uint32_t m = 2; m <= 8; ++m) {
            const std::uint64_t N = 1ull << m;
            row("stairP", 0, 0, encode(Pattern::staircase(0.5), N).info);
            row("stairN", 0, 0, encode(Pattern::staircase(-0.5), N).info);
            row("stairC", 0, 0, encode(Pattern::staircase(cplx{0.3,0.4}), N).info);
            row("stairB", 0, 0, encode(Pattern::staircase(2.0), N).info);
        }
    } else if (what == "wh") {
        for (std::uint32_t m = 2; m <= 8; ++m) {
            const std::uint64_t N = 1ull << m;
            row("ham", 0,0, encode(Pattern::hamming(0.7), N).info);
            row("hamN", 0,0, encode(Pattern::hamming(-0.7), N).info);
            row("hamC", 0,0, encode(Pattern::hamming(cplx{0.3,0.4}), N).info);
            row("walsh", 1,0, encode(Pattern::walsh(1, 1.0, 4.0), N).info);
            row("walshC", 1,0, encode(Pattern::walsh(1, cplx{1,2}, cplx{3,-1}), N).info);
            row("walsh0", 0,0, encode(Pattern::walsh(0, 0.0, 2.0), N).info);
            row("walshE", 1,0, encode(Pattern::walsh(1, 2.0, 2.0), N).info);
            row("geo", 0,0, encode(Pattern::geometric(0.5), N).info);
            row("geoN", 0,0, encode(Pattern::geometric(-0.5), N).info);
            row("geoC", 0,0, encode(Pattern::geometric(std::polar(0.8,0.7)), N).info);
        }
    } else if (what == "sq") {
        for (std::uint32_t m = 2; m <= 6; ++m) {
            const std::uint64_t N = 1ull << m;
            for (std::uint64_t p = 0; (1ull<<p) <= N; ++p)
                for (std::uint64_t ks = 0; ks + (1ull<<p) <= N; ks += (1ull<<p))
                    row("sqal", ks, ks+(1ull<<p), encode(Pattern::square(ks, ks+(1ull<<p)), N).info);
        }
    } else if (what == "f1") {
        for (std::uint32_t m = 3; m <= 8; ++m) {
            const std::uint64_t N = 1ull << m;
            for (std::uint64_t n = 1; n < N/2; ++n) {
                row("f1p0", n, 0, encode(Pattern::fourier({{std::uint32_t(n),1.0,0.0}}), N).info);
                row("f1ph", n, 0, encode(Pattern::fourier({{std::uint32_t(n),1.0,0.3}}), N).info);
            }
        }
    } else if (what == "p1") {
        for (std::uint32_t m = 2; m <= 12; ++m) {
            const std::uint64_t N = 1ull << m;
            row("p1", 0,0, encode(Pattern::polynomial({0.0, 1.0}), N).info);
            row("p1b", 0,0, encode(Pattern::polynomial({0.3, 1.7}), N).info);
            row("p1z", 0,0, encode(Pattern::polynomial({-0.5, 1.0}), N).info);  // c0 = -c1/2
            row("p0", 0,0, encode(Pattern::polynomial({2.0}), N).info);
        }
    } else if (what == "sp1") {
        for (std::uint32_t m = 2; m <= 8; ++m) {
            const std::uint64_t N = 1ull << m;
            row("sp1", N/4, 0, encode(Pattern::sparse({{N/4, 1.0}}), N).info);
            row("sp1c", N-1, 0, encode(Pattern::sparse({{N-1, cplx{1,2}}}), N).info);
            row("sp10", 0, 0, encode(Pattern::sparse({{0, 2.0}}), N).info);
        }
    } else if (what == "dicke") {
        for (std::uint32_t m = 4; m <= 12; ++m)
            for (std::uint32_t k = 0; k <= m; ++k)
                row("dicke", k, 0, encode(Pattern::dicke(k), 1ull << m).info);
    } else if (what == "sqg") {
        for (std::uint32_t m = 4; m <= 12; ++m) {
            const std::uint64_t N = 1ull << m;
            row("sq", 1, N-1, encode(Pattern::square(1, N-1), N).info);
            row("sq", 3, N/2+1, encode(Pattern::square(3, N/2+1), N).info);
            row("sq", N/3, 2*N/3, encode(Pattern::square(N/3, 2*N/3), N).info);
            row("sq", 5, 11, encode(Pattern::square(5, 11), N).info);
        }
    } else if (what == "geo") {
        for (std::uint32_t m = 4; m <= 12; ++m) {
            const std::uint64_t N = 1ull << m;
            row("geo", 1, 0, encode(Pattern::geometric(0.7, 1), N).info);
            row("geo", 3, 0, encode(Pattern::geometric(0.7, 3), N).info);
            row("geo", N/3, 0, encode(Pattern::geometric(0.9, N/3), N).info);
            row("geo", N-3, 0, encode(Pattern::geometric(cplx{0.5,0.3}, N-3), N).info);
        }
    } else if (what == "poly") {
        for (std::uint32_t m = 4; m <= 10; ++m) {
            const std::uint64_t N = 1ull << m;
            row("poly2", 2, 0, encode(Pattern::polynomial({0.2, 1.0, 0.5}), N).info);
            row("poly3", 3, 0, encode(Pattern::polynomial({0.2, 1.0, 0.5, -0.3}), N).info);
        }
    } else if (what == "f2") {
        for (std::uint32_t m = 4; m <= 12; ++m) {
            const std::uint64_t N = 1ull << m;
            row("f2", 0, 0, encode(Pattern::fourier({{1,1.0,0.0},{3,0.5,0.2}}), N).info);
            row("f3", 0, 0, encode(Pattern::fourier({{1,1.0,0.0},{2,0.7,0.0},{5,0.5,1.0}}), N).info);
        }
    } else if (what == "spn") {
        std::mt19937_64 rng(12345);
        for (std::uint32_t m = 4; m <= 12; ++m) {
            const std::uint64_t N = 1ull << m;
            for (std::size_t s : {2, 3, 4, 8}) {
                for (int rep = 0; rep < 3; ++rep) {
                    std::vector<std::pair<std::uint64_t, cplx>> e;
                    std::set<std::uint64_t> seen;
                    while (e.size() < s) {
                        const std::uint64_t x = rng() % N;
                        if (seen.insert(x).second)
                            e.push_back({x, cplx{1.0 + double(rng() % 7),
                                                 double(rng() % 5) - 2.0}});
                    }
                    row("spn", s, m, encode(Pattern::sparse(e), N).info);
                }
            }
        }
    } else if (what == "comp") {
        for (std::uint32_t m = 4; m <= 10; ++m) {
            const std::uint64_t N = 1ull << m;
            row("sum2", 0, 0,
                encode(Pattern::sum({{1.0, Pattern::walsh(1, 1.0, 3.0)},
                                     {0.5, Pattern::walsh(2, 2.0, 1.0)}}), N).info);
            row("sum3", 0, 0,
                encode(Pattern::sum({{1.0, Pattern::step(N/2)},
                                     {0.7, Pattern::hamming(0.5)},
                                     {0.3, Pattern::square(N/4, N/2)}}), N).info);
            row("part", 0, 0,
                encode(Pattern::partition({Pattern::square(0, N/4),
                                           Pattern::geometric(0.8, N/2)}), N).info);
            row("part2", 0, 0,
                encode(Pattern::partition({Pattern::sparse({{1, 1.0}}),
                                           Pattern::square(N/4, N/2 - 1)}), N).info);
        }
    }
    return 0;
}
