#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qencode/circuit.hpp"
#include "qencode/mps.hpp"
#include "qencode/pattern.hpp"
#include "qencode/predict.hpp"
#include "qencode/synth.hpp"

namespace qencode {

// ---- pattern declaration documents -----------------------------------------
//
// {"pattern": "<family>", ...family params}.  Complex scalars are a bare
// number or {"re": .., "im": ..}.  Compositions nest:
//   {"pattern":"sum","terms":[{"weight":.., "of":{...}}, ...]}
//   {"pattern":"partition","parts":[{...}, ...]}
//   {"pattern":"tensor","factors":[{"of":{...},"N":..}, ...]}
// Unknown fields are rejected.  Throws std::invalid_argument with the
// offending field named.

Pattern pattern_from_json(const nlohmann::json& j);

// Canonical form: defaulted scalars omitted, real scalars printed bare.
// pattern_from_json(pattern_to_json(p)) reproduces p.
nlohmann::json pattern_to_json(const Pattern& p);

// ---- OpenQASM 2.0 -----------------------------------------------------------

// Emit a transpiled circuit ({U3, CX} basis) as an OpenQASM 2.0 program:
// one quantum register, u3/cx statements, no measurements, angles with 17
// significant digits.  Throws std::invalid_argument on other gate kinds.
std::string to_qasm(const Circuit& transpiled);

// ---- report JSON ------------------------------------------------------------

nlohmann::json info_to_json(const EncodingInfo& info);
nlohmann::json predict_to_json(const PredictResult& r);

// ---- numeric vector input ---------------------------------------------------

// JSON array of amplitudes: numbers, {"re","im"} objects, or [re, im] pairs.
std::vector<cplx> read_vector_json(std::istream& in);
// One amplitude per line: "re" or "re,im"; blank lines skipped.
std::vector<cplx> read_vector_csv(std::istream& in);
// Raw little-endian float64 array of real amplitudes.
std::vector<cplx> read_vector_f64(std::istream& in);

// ---- MPS tensor input -------------------------------------------------------
//
// {"bond_dim":.., "sites":[{"chi_l":..,"chi_r":..,"data":[amp, ...]}, ...]}
// with data in row-major (left bond * physical, right bond) order and
// amplitudes in the same forms accepted by read_vector_json.
MpsTensors tensors_from_json(const nlohmann::json& j);

}  // namespace qencode
