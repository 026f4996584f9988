#pragma once

#include <complex>

#include "qpir/protocol.hpp"

namespace qpir {

/// Dense state on system (dim q^n) tensor reference (dim q^aux), stored
/// system-major: amp[sys * q^aux + ref]. The reference purifies the
/// maximally mixed component of the stabilizer initial state.
struct StateVector {
    std::vector<std::complex<double>> amp;
    const Field* field = nullptr;
    size_t n = 0;
    size_t aux_exp = 0; // 2(k+t-1) - n

    size_t sys_dim() const;
    size_t ref_dim() const;
    double norm() const;
};

struct WeylLabel {
    Vec a, b; // shift and phase halves, length n each
};

/// X(a)Z(b): phase omega^{tr(b.x)} then shift x -> x + a, qudit-wise on the
/// system factor. Odd characteristic only.
StateVector weyl_apply(const StateVector& state, const WeylLabel& label);

/// Purification of the normalized stabilizer projector P_0 for the
/// self-orthogonal space spanned by v_basis (rows, width 2n). The reduced
/// system state is P_0 / tr(P_0).
StateVector stabilizer_initial_state(const Matrix& v_basis, const Field* field, size_t n,
                                     size_t aux_exp);

/// Probability of each coset outcome x in F_q^{2c}, representative x*M,
/// under the stabilizer PVM. `sign` (+1/-1) fixes the character pairing
/// convention; calibrate_phase_sign resolves it empirically.
std::vector<double> pvm_probabilities(const StateVector& state, const Matrix& v_basis,
                                      const Matrix& m, int sign);

/// Picks the sign under which displacing the initial state by x*M yields
/// outcome x with probability 1.
int calibrate_phase_sign(const Matrix& v_basis, const Matrix& m, const Field* field,
                         size_t n, size_t aux_exp);

/// Outcome index helpers: a coset label vector in F_q^{2c} <-> its base-q
/// integer encoding (little-endian positions).
uint64_t label_encode(const Vec& x);
Vec label_decode(const Field* field, uint64_t enc, size_t len);

/// Same classical steps as run_protocol, but every round's measurement is
/// the dense PVM on the literally simulated quantum state. Throws unless the
/// distribution is a point mass within 1e-9. Odd characteristic, small
/// instances only.
Transcript run_dense_protocol(const SchemeParams& p, const SchemeCodes& codes,
                              const StorageSystem& storage, size_t K, uint64_t seed);

} // namespace qpir
