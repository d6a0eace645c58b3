#include "qencode/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qencode {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void expect_fields(const json& j, std::initializer_list<const char*> allowed,
                   const char* ctx) {
    if (!j.is_object()) bad(std::string(ctx) + ": expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) bad(std::string(ctx) + ": unknown field '" + key + "'");
    }
}

double num_field(const json& v, const char* ctx) {
    if (!v.is_number()) bad(std::string(ctx) + ": expected a number");
    return v.get<double>();
}

std::uint64_t uint_field(const json& v, const char* ctx) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return std::uint64_t(v.get<std::int64_t>());
    bad(std::string(ctx) + ": expected a non-negative integer");
}

cplx cplx_field(const json& v, const char* ctx) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_object()) {
        expect_fields(v, {"re", "im"}, ctx);
        if (v.empty()) bad(std::string(ctx) + ": empty complex object");
        double re = 0.0, im = 0.0;
        if (v.contains("re")) re = num_field(v["re"], ctx);
        if (v.contains("im")) im = num_field(v["im"], ctx);
        return {re, im};
    }
    bad(std::string(ctx) + ": expected a number or {\"re\",\"im\"}");
}

json cplx_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

const json& req(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key)) bad(std::string(ctx) + ": missing field '" + key + "'");
    return j.at(key);
}

}  // namespace

Pattern pattern_from_json(const json& j) {
    if (!j.is_object()) bad("pattern document: expected a JSON object");
    const std::string f = req(j, "pattern", "pattern document").is_string()
                              ? j["pattern"].get<std::string>()
                              : (bad("pattern document: 'pattern' must be a string"), "");
    if (f == "sparse") {
        expect_fields(j, {"pattern", "entries"}, "sparse");
        const json& es = req(j, "entries", "sparse");
        if (!es.is_array()) bad("sparse: 'entries' must be an array");
        std::vector<std::pair<std::uint64_t, cplx>> entries;
        for (const json& e : es) {
            if (!e.is_array() || e.size() != 2)
                bad("sparse: each entry must be [index, amplitude]");
            entries.push_back({uint_field(e[0], "sparse entry index"),
                               cplx_field(e[1], "sparse entry amplitude")});
        }
        return Pattern::sparse(std::move(entries));
    }
    if (f == "step") {
        expect_fields(j, {"pattern", "k_e", "c"}, "step");
        const cplx c = j.contains("c") ? cplx_field(j["c"], "step c") : cplx{1.0};
        return Pattern::step(uint_field(req(j, "k_e", "step"), "step k_e"), c);
    }
    if (f == "square") {
        expect_fields(j, {"pattern", "k_s", "k_e", "c"}, "square");
        const cplx c = j.contains("c") ? cplx_field(j["c"], "square c") : cplx{1.0};
        return Pattern::square(uint_field(req(j, "k_s", "square"), "square k_s"),
                               uint_field(req(j, "k_e", "square"), "square k_e"), c);
    }
    if (f == "walsh") {
        expect_fields(j, {"pattern", "k", "c0", "c1"}, "walsh");
        return Pattern::walsh(
            std::uint32_t(uint_field(req(j, "k", "walsh"), "walsh k")),
            cplx_field(req(j, "c0", "walsh"), "walsh c0"),
            cplx_field(req(j, "c1", "walsh"), "walsh c1"));
    }
    if (f == "fourier") {
        expect_fields(j, {"pattern", "modes"}, "fourier");
        const json& ms = req(j, "modes", "fourier");
        if (!ms.is_array()) bad("fourier: 'modes' must be an array");
        std::vector<std::tuple<std::uint64_t, double, double>> modes;
        for (const json& mo : ms) {
            if (!mo.is_array() || mo.size() != 3)
                bad("fourier: each mode must be [n, A, phi]");
            modes.push_back({uint_field(mo[0], "fourier mode n"),
                             num_field(mo[1], "fourier mode A"),
                             num_field(mo[2], "fourier mode phi")});
        }
        return Pattern::fourier(std::move(modes));
    }
    if (f == "geometric") {
        expect_fields(j, {"pattern", "r", "k_s", "c"}, "geometric");
        const std::uint64_t k_s =
            j.contains("k_s") ? uint_field(j["k_s"], "geometric k_s") : 0;
        const cplx c = j.contains("c") ? cplx_field(j["c"], "geometric c") : cplx{1.0};
        return Pattern::geometric(cplx_field(req(j, "r", "geometric"), "geometric r"),
                                  k_s, c);
    }
    if (f == "hamming") {
        expect_fields(j, {"pattern", "r", "c"}, "hamming");
        const cplx c = j.contains("c") ? cplx_field(j["c"], "hamming c") : cplx{1.0};
        return Pattern::hamming(cplx_field(req(j, "r", "hamming"), "hamming r"), c);
    }
    if (f == "staircase") {
        expect_fields(j, {"pattern", "r", "c"}, "staircase");
        const cplx c = j.contains("c") ? cplx_field(j["c"], "staircase c") : cplx{1.0};
        return Pattern::staircase(cplx_field(req(j, "r", "staircase"), "staircase r"),
                                  c);
    }
    if (f == "dicke") {
        expect_fields(j, {"pattern", "k", "c"}, "dicke");
        const double c = j.contains("c") ? num_field(j["c"], "dicke c") : 1.0;
        return Pattern::dicke(std::uint32_t(uint_field(req(j, "k", "dicke"), "dicke k")),
                              c);
    }
    if (f == "polynomial") {
        expect_fields(j, {"pattern", "coeffs"}, "polynomial");
        const json& cs = req(j, "coeffs", "polynomial");
        if (!cs.is_array()) bad("polynomial: 'coeffs' must be an array");
        std::vector<cplx> coeffs;
        for (const json& c : cs) coeffs.push_back(cplx_field(c, "polynomial coeff"));
        return Pattern::polynomial(std::move(coeffs));
    }
    if (f == "sum") {
        expect_fields(j, {"pattern", "terms"}, "sum");
        const json& ts = req(j, "terms", "sum");
        if (!ts.is_array()) bad("sum: 'terms' must be an array");
        std::vector<std::pair<cplx, Pattern>> terms;
        for (const json& t : ts) {
            expect_fields(t, {"weight", "of"}, "sum term");
            terms.push_back({cplx_field(req(t, "weight", "sum term"), "sum weight"),
                             pattern_from_json(req(t, "of", "sum term"))});
        }
        return Pattern::sum(std::move(terms));
    }
    if (f == "partition") {
        expect_fields(j, {"pattern", "parts"}, "partition");
        const json& ps = req(j, "parts", "partition");
        if (!ps.is_array()) bad("partition: 'parts' must be an array");
        std::vector<Pattern> parts;
        for (const json& p : ps) parts.push_back(pattern_from_json(p));
        return Pattern::partition(std::move(parts));
    }
    if (f == "tensor") {
        expect_fields(j, {"pattern", "factors"}, "tensor");
        const json& fs = req(j, "factors", "tensor");
        if (!fs.is_array()) bad("tensor: 'factors' must be an array");
        std::vector<std::pair<Pattern, std::uint64_t>> parts;
        for (const json& p : fs) {
            expect_fields(p, {"of", "N"}, "tensor factor");
            parts.push_back({pattern_from_json(req(p, "of", "tensor factor")),
                             uint_field(req(p, "N", "tensor factor"), "tensor N")});
        }
        return Pattern::tensor(std::move(parts));
    }
    bad("pattern document: unknown family '" + f + "'");
}

json pattern_to_json(const Pattern& p) {
    const PatternNode& n = p.node();
    json j;
    switch (n.tag) {
        case PatternNode::Tag::Sparse: {
            j["pattern"] = "sparse";
            json es = json::array();
            for (const auto& [i, a] : n.sparse.entries)
                es.push_back(json::array({i, cplx_json(a)}));
            j["entries"] = std::move(es);
            break;
        }
        case PatternNode::Tag::Step:
            j["pattern"] = "step";
            j["k_e"] = n.step.k_e;
            if (n.step.c != cplx{1.0}) j["c"] = cplx_json(n.step.c);
            break;
        case PatternNode::Tag::Square:
            j["pattern"] = "square";
            j["k_s"] = n.square.k_s;
            j["k_e"] = n.square.k_e;
            if (n.square.c != cplx{1.0}) j["c"] = cplx_json(n.square.c);
            break;
        case PatternNode::Tag::Walsh:
            j["pattern"] = "walsh";
            j["k"] = n.walsh.k;
            j["c0"] = cplx_json(n.walsh.c0);
            j["c1"] = cplx_json(n.walsh.c1);
            break;
        case PatternNode::Tag::Fourier: {
            j["pattern"] = "fourier";
            json ms = json::array();
            for (const auto& mo : n.fourier.modes)
                ms.push_back(json::array({mo.n, mo.A, mo.phi}));
            j["modes"] = std::move(ms);
            break;
        }
        case PatternNode::Tag::Geometric:
            j["pattern"] = "geometric";
            j["r"] = cplx_json(n.geometric.r);
            if (n.geometric.k_s != 0) j["k_s"] = n.geometric.k_s;
            if (n.geometric.c != cplx{1.0}) j["c"] = cplx_json(n.geometric.c);
            break;
        case PatternNode::Tag::Hamming:
            j["pattern"] = "hamming";
            j["r"] = cplx_json(n.hamming.r);
            if (n.hamming.c != cplx{1.0}) j["c"] = cplx_json(n.hamming.c);
            break;
        case PatternNode::Tag::Staircase:
            j["pattern"] = "staircase";
            j["r"] = cplx_json(n.staircase.r);
            if (n.staircase.c != cplx{1.0}) j["c"] = cplx_json(n.staircase.c);
            break;
        case PatternNode::Tag::Dicke:
            j["pattern"] = "dicke";
            j["k"] = n.dicke.k;
            if (n.dicke.c != 1.0) j["c"] = n.dicke.c;
            break;
        case PatternNode::Tag::Polynomial: {
            j["pattern"] = "polynomial";
            json cs = json::array();
            for (cplx c : n.polynomial.coeffs) cs.push_back(cplx_json(c));
            j["coeffs"] = std::move(cs);
            break;
        }
        case PatternNode::Tag::Sum: {
            j["pattern"] = "sum";
            json ts = json::array();
            for (const auto& [w, q] : n.sum.terms)
                ts.push_back({{"weight", cplx_json(w)}, {"of", pattern_to_json(q)}});
            j["terms"] = std::move(ts);
            break;
        }
        case PatternNode::Tag::Partition: {
            j["pattern"] = "partition";
            json ps = json::array();
            for (const auto& q : n.partition.parts) ps.push_back(pattern_to_json(q));
            j["parts"] = std::move(ps);
            break;
        }
        case PatternNode::Tag::Tensor: {
            j["pattern"] = "tensor";
            json fs = json::array();
            for (const auto& [q, Ni] : n.tensor.parts)
                fs.push_back({{"of", pattern_to_json(q)}, {"N", Ni}});
            j["factors"] = std::move(fs);
            break;
        }
    }
    return j;
}

// ---- OpenQASM 2.0 -----------------------------------------------------------

std::string to_qasm(const Circuit& transpiled) {
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(transpiled.num_qubits) + "];\n";
    char buf[128];
    for (const Gate& g : transpiled.gates) {
        switch (g.kind) {
            case GateKind::U3:
                std::snprintf(buf, sizeof buf, "u3(%.17g,%.17g,%.17g) q[%u];\n",
                              g.params[0], g.params[1], g.params[2], g.targets[0]);
                out += buf;
                break;
            case GateKind::CX:
                std::snprintf(buf, sizeof buf, "cx q[%u],q[%u];\n", g.controls[0],
                              g.targets[0]);
                out += buf;
                break;
            default:
                bad("to_qasm: circuit is not in the {U3, CX} basis; transpile first");
        }
    }
    return out;
}

// ---- report JSON ------------------------------------------------------------

json info_to_json(const EncodingInfo& info) {
    json j;
    j["pattern_name"] = info.pattern_name;
    j["N"] = info.N;
    j["m"] = info.m;
    j["params"] = info.params;
    j["gate_count"] = info.gate_count;
    j["gate_count_1q"] = info.gate_count_1q;
    j["gate_count_2q"] = info.gate_count_2q;
    j["circuit_depth"] = info.circuit_depth;
    j["complexity"] = info.complexity;
    j["success_probability"] = info.success_probability;
    j["circuit_code"] = info.circuit_code;
    j["validated"] = info.validated;
    j["warnings"] = info.warnings;
    return j;
}

json predict_to_json(const PredictResult& r) {
    json j;
    j["pattern_name"] = r.pattern_name;
    j["N"] = r.N;
    j["m"] = r.m;
    j["gate_count_1q"] = r.gate_count_1q;
    j["gate_count_2q"] = r.gate_count_2q;
    j["circuit_depth"] = r.circuit_depth;
    j["complexity"] = r.complexity;
    j["exact"] = r.exact;
    return j;
}

// ---- numeric vector input ---------------------------------------------------

std::vector<cplx> read_vector_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        bad(std::string("vector JSON: ") + e.what());
    }
    if (!j.is_array()) bad("vector JSON: expected an array");
    std::vector<cplx> v;
    for (const json& e : j) {
        if (e.is_array()) {
            if (e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                bad("vector JSON: pair entries must be [re, im]");
            v.push_back({e[0].get<double>(), e[1].get<double>()});
        } else {
            v.push_back(cplx_field(e, "vector JSON entry"));
        }
    }
    return v;
}

std::vector<cplx> read_vector_csv(std::istream& in) {
    std::vector<cplx> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        double re = 0.0, im = 0.0;
        char extra = 0;
        const int got = std::sscanf(line.c_str(), " %lf , %lf %c", &re, &im, &extra);
        if (got == 2) {
            v.push_back({re, im});
        } else if (std::sscanf(line.c_str(), " %lf %c", &re, &extra) == 1) {
            v.push_back({re, 0.0});
        } else {
            bad("vector CSV: line " + std::to_string(lineno) + " is not numeric");
        }
    }
    return v;
}

std::vector<cplx> read_vector_f64(std::istream& in) {
    static_assert(std::endian::native == std::endian::little,
                  "binary reader assumes a little-endian host");
    std::vector<cplx> v;
    double x = 0.0;
    while (in.read(reinterpret_cast<char*>(&x), sizeof x)) v.push_back({x, 0.0});
    if (in.gcount() != 0) bad("vector f64: trailing bytes are not a whole float64");
    return v;
}

// ---- MPS tensor input -------------------------------------------------------

MpsTensors tensors_from_json(const json& j) {
    expect_fields(j, {"bond_dim", "sites"}, "tensors");
    MpsTensors t;
    t.bond_dim = uint_field(req(j, "bond_dim", "tensors"), "tensors bond_dim");
    const json& sites = req(j, "sites", "tensors");
    if (!sites.is_array()) bad("tensors: 'sites' must be an array");
    for (const json& s : sites) {
        expect_fields(s, {"chi_l", "chi_r", "data"}, "tensor site");
        MpsTensor site;
        site.chi_l = uint_field(req(s, "chi_l", "tensor site"), "tensor chi_l");
        site.chi_r = uint_field(req(s, "chi_r", "tensor site"), "tensor chi_r");
        const json& data = req(s, "data", "tensor site");
        if (!data.is_array()) bad("tensor site: 'data' must be an array");
        for (const json& e : data) {
            if (e.is_array()) {
                if (e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                    bad("tensor site: pair entries must be [re, im]");
                site.data.push_back({e[0].get<double>(), e[1].get<double>()});
            } else {
                site.data.push_back(cplx_field(e, "tensor site data"));
            }
        }
        if (site.data.size() != site.chi_l * 2 * site.chi_r)
            bad("tensor site: data length must be chi_l * 2 * chi_r");
        t.sites.push_back(std::move(site));
    }
    return t;
}

}  // namespace qencode
