#pragma once

#include "qpir/linalg.hpp"

namespace qpir {

/// The 2n x 2n form matrix J = [[0, -I], [I, 0]].
Matrix symplectic_J(const Field* field, size_t n);

/// tr(x J y^T) in GF(p), returned as a prime-subfield element.
FieldElement symp_form(const Vec& x, const Vec& y);

/// x J y^T without the trace (the F_q-bilinear pairing).
FieldElement symp_pairing(const Vec& x, const Vec& y);

/// Basis of {w : x J w^T = 0 for all x in rowspace(V)}, via the F_q-bilinear
/// kernel. For F_q-linear spaces this coincides with the trace-form dual.
Matrix symp_dual(const Matrix& v_basis);

/// All pairwise F_q-bilinear symplectic pairings among basis rows vanish
/// (the stabilizer-existence condition for the subspace).
bool is_self_orthogonal(const Matrix& v_basis);

/// Decoder for the coset label of a vector A in F_q^{2n} relative to the
/// decomposition F_q^{2n} = rowspace(G_S) + rowspace(M): solves against the
/// stacked basis once and reads off the M-coefficients. Immutable after
/// construction.
class CosetDecoder {
  public:
    /// Throws SingularBasis when rank(G_S; M) < 2n.
    CosetDecoder(Matrix g_s, Matrix m);

    /// The unique x in F_q^{2c} with A in rowspace(G_S) + x*M.
    Vec decode(const Vec& a) const;

    size_t coset_len() const { return coset_len_; }

  private:
    size_t gs_rows_, coset_len_;
    Matrix basis_inv_; // inverse of vstack(G_S, M)
};

} // namespace qpir
