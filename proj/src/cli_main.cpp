// qencode command-line front end: encode / predict / mps.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qencode/io.hpp"
#include "qencode/mps.hpp"
#include "qencode/predict.hpp"
#include "qencode/synth.hpp"
#include "qencode/transpile.hpp"

namespace {

using qencode::cplx;
using nlohmann::json;

// The pattern argument is a file path unless it looks like inline JSON.
json load_spec(const std::string& arg) {
    const std::size_t a = arg.find_first_not_of(" \t\r\n");
    if (a != std::string::npos && (arg[a] == '{' || arg[a] == '[')) {
        return json::parse(arg);
    }
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open spec file: " + arg);
    return json::parse(in);
}

// Buffered so that a failing command never leaves a partial output file.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

json counts_json(const qencode::EncodingInfo& info) {
    json j;
    j["gate_count"] = info.gate_count;
    j["gate_count_1q"] = info.gate_count_1q;
    j["gate_count_2q"] = info.gate_count_2q;
    j["circuit_depth"] = info.circuit_depth;
    return j;
}

std::string render(const qencode::EncodeResult& r, const std::string& mode) {
    if (mode == "qasm") return qencode::to_qasm(qencode::transpile(r.circuit));
    if (mode == "json") return qencode::info_to_json(r.info).dump(2) + "\n";
    return counts_json(r.info).dump(2) + "\n";
}

std::vector<cplx> load_vector(const std::string& path, std::string format) {
    if (format == "auto") {
        if (path.ends_with(".json")) format = "json";
        else if (path.ends_with(".csv")) format = "csv";
        else if (path.ends_with(".f64") || path.ends_with(".bin")) format = "f64";
        else throw std::invalid_argument(
            "cannot infer vector format from '" + path + "'; pass --format");
    }
    std::ifstream in(path, format == "f64" ? std::ios::binary : std::ios::in);
    if (!in) throw std::invalid_argument("cannot open vector file: " + path);
    std::vector<cplx> v;
    if (format == "json") v = qencode::read_vector_json(in);
    else if (format == "csv") v = qencode::read_vector_csv(in);
    else v = qencode::read_vector_f64(in);
    if (v.empty()) throw std::invalid_argument("vector file is empty: " + path);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structured quantum state preparation"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed,
                   "Reserved; all algorithms are deterministic");

    // encode ------------------------------------------------------------
    auto* enc = app.add_subcommand("encode", "Compile a pattern into a circuit");
    std::string enc_spec, enc_emit = "qasm", enc_out;
    std::uint64_t enc_N = 0;
    bool enc_validate = false;
    double enc_tol = 1e-6;
    enc->add_option("spec", enc_spec, "Pattern document: file path or inline JSON")
        ->required();
    enc->add_option("-N,--num-amplitudes", enc_N, "Vector length (power of two)")
        ->required();
    enc->add_flag("--validate", enc_validate, "Simulate and check the state");
    enc->add_option("--tol", enc_tol, "Validation tolerance")->capture_default_str();
    enc->add_option("--emit", enc_emit, "Output form")->capture_default_str()
        ->check(CLI::IsMember({"qasm", "json", "counts"}));
    enc->add_option("--out", enc_out, "Write output to a file instead of stdout");

    // predict -----------------------------------------------------------
    auto* pre = app.add_subcommand("predict",
                                   "Predict transpiled resource counts");
    std::string pre_spec;
    std::uint64_t pre_N = 0;
    pre->add_option("spec", pre_spec, "Pattern document: file path or inline JSON")
        ->required();
    pre->add_option("-N,--num-amplitudes", pre_N, "Vector length (power of two)")
        ->required();

    // mps ---------------------------------------------------------------
    auto* mps = app.add_subcommand("mps",
                                   "Approximately load a numeric vector");
    std::string mps_in, mps_format = "auto", mps_tensors, mps_emit = "json",
                mps_out;
    std::size_t mps_chi = 0;
    bool mps_validate = false;
    double mps_tol = 1e-6;
    auto* in_opt = mps->add_option("--in", mps_in, "Vector file");
    mps->add_option("--format", mps_format, "Vector file format")->capture_default_str()
        ->check(CLI::IsMember({"auto", "json", "csv", "f64"}));
    auto* chi_opt = mps->add_option("--bond-dim", mps_chi, "Maximum bond dimension");
    auto* ten_opt =
        mps->add_option("--tensors-in", mps_tensors,
                        "JSON file with prebuilt right-canonical tensors");
    mps->add_flag("--validate", mps_validate, "Simulate and check the state");
    mps->add_option("--tol", mps_tol, "Validation tolerance")->capture_default_str();
    mps->add_option("--emit", mps_emit, "Output form")->capture_default_str()
        ->check(CLI::IsMember({"qasm", "json", "counts"}));
    mps->add_option("--out", mps_out, "Write output to a file instead of stdout");
    in_opt->excludes(ten_opt);
    chi_opt->needs(in_opt);

    try {
        app.parse(argc, argv);

        if (enc->parsed()) {
            const qencode::Pattern p = qencode::pattern_from_json(load_spec(enc_spec));
            const qencode::EncodeResult r =
                qencode::encode(p, enc_N, enc_validate, enc_tol);
            emit(render(r, enc_emit), enc_out);
        } else if (pre->parsed()) {
            const qencode::Pattern p = qencode::pattern_from_json(load_spec(pre_spec));
            const qencode::PredictResult r = qencode::predict_gates(p, pre_N);
            std::cout << qencode::predict_to_json(r).dump(2) << "\n";
        } else if (mps->parsed()) {
            qencode::EncodeResult r;
            if (!mps_tensors.empty()) {
                std::ifstream in(mps_tensors);
                if (!in)
                    throw std::invalid_argument("cannot open tensors file: " +
                                                mps_tensors);
                r = qencode::encode_mps_from_tensors(
                    qencode::tensors_from_json(json::parse(in)));
            } else {
                if (mps_in.empty())
                    throw std::invalid_argument("mps needs --in or --tensors-in");
                if (mps_chi == 0)
                    throw std::invalid_argument("mps --in needs --bond-dim >= 1");
                r = qencode::encode_mps(load_vector(mps_in, mps_format), mps_chi,
                                        mps_validate, mps_tol);
            }
            emit(render(r, mps_emit), mps_out);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
