#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qencode/circuit.hpp"
#include "qencode/synth.hpp"

namespace qencode {

// One site of a right-canonical matrix product state.  data is row-major
// over the axes (left bond, physical, right bond):
//   data[(b_l * 2 + i) * chi_r + b_r].
struct MpsTensor {
    std::size_t chi_l = 1;
    std::size_t chi_r = 1;
    std::vector<cplx> data;
};

struct MpsTensors {
    // sites[0] carries the most significant physical bit; boundary bonds
    // have dimension 1 and every site contracted with its own conjugate
    // over the (physical, right) axes gives the identity on the left bond.
    std::vector<MpsTensor> sites;
    std::size_t bond_dim = 1;
};

// Right-to-left truncated SVD sweep.  v must have power-of-two length and a
// nonzero norm; it is normalized internally.  Each cut keeps at most chi
// singular values; the returned scalar accumulates the discarded sigma^2
// across all cuts, an upper bound on 1 - |<v|psi>|^2 of the resulting state.
// The leftmost tensor is renormalized so the state stays unit norm.
std::pair<MpsTensors, double> mps_decompose(const std::vector<cplx>& v,
                                            std::size_t chi);

// Complete k orthonormal columns (column-major, k = columns.size() / dim) to
// a dim x dim unitary whose leading k columns equal the input.  The
// remaining columns come from canonical unit vectors orthogonalized by
// modified Gram-Schmidt in index order, skipping near-dependent candidates.
// Throws std::invalid_argument when the input columns are not orthonormal
// within 1e-8.
std::vector<cplx> complete_to_unitary(const std::vector<cplx>& columns,
                                      std::size_t dim);

// Sequential cascade preparing the MPS state.  The circuit acts on
// n_bond + m qubits with the bond register on the highest indices; it
// starts and ends with the bond register in |0>, so the physical register
// holds the state with unit probability and no post-selection.
Circuit mps_to_circuit(const MpsTensors& tensors);

// Approximate loader for an arbitrary numeric vector: zero-pad to the next
// power of two, normalize, decompose at the given bond dimension, and emit
// the cascade.  info.params carries {bond_dim, n_bond, truncation_error_sq,
// n_padded}.  With validate=true the physical-register block of the
// simulated state is compared against the normalized input.
EncodeResult encode_mps(const std::vector<cplx>& v, std::size_t bond_dim,
                        bool validate = false, double tol = 1e-6);

// Same cascade fed with externally built right-canonical tensors (the SVD
// sweep is skipped and truncation_error_sq is reported as 0).  Throws when
// the bond dimensions do not chain or a site violates right-canonicality
// beyond 1e-8.
EncodeResult encode_mps_from_tensors(const MpsTensors& tensors);

}  // namespace qencode
