#include "qpir/symplectic.hpp"

namespace qpir {

Matrix symplectic_J(const Field* field, size_t n) {
    Matrix j(field, 2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        j.at(i, n + i) = -field->one();
        j.at(n + i, i) = field->one();
    }
    return j;
}

FieldElement symp_pairing(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw Error("LengthMismatch", "symplectic pairing needs equal even lengths");
    size_t n = x.size() / 2;
    const Field* f = x[0].field();
    // x J y^T = a*d' - b*c' with x = (a, b), y = (c, d):
    // (a,b) J = (b, -a), dotted with (c, d).
    FieldElement acc = f->zero();
    for (size_t i = 0; i < n; ++i) {
        acc += x[n + i] * y[i];
        acc -= x[i] * y[n + i];
    }
    return acc;
}

FieldElement symp_form(const Vec& x, const Vec& y) {
    FieldElement v = symp_pairing(x, y);
    return v.field()->trace(v);
}

Matrix symp_dual(const Matrix& v_basis) {
    const Field* f = v_basis.field();
    if (v_basis.rows() == 0)
        throw Error("InvalidParams", "symp_dual needs the ambient width; pass a zero row for {0}");
    size_t n2 = v_basis.cols();
    if (n2 % 2 != 0) throw Error("LengthMismatch", "ambient dimension must be even");
    Matrix vj = v_basis * symplectic_J(f, n2 / 2);
    return kernel(vj);
}

bool is_self_orthogonal(const Matrix& v_basis) {
    for (size_t i = 0; i < v_basis.rows(); ++i)
        for (size_t j = i; j < v_basis.rows(); ++j)
            if (!symp_pairing(v_basis.row(i), v_basis.row(j)).is_zero()) return false;
    return true;
}

CosetDecoder::CosetDecoder(Matrix g_s, Matrix m)
    : gs_rows_(g_s.rows()), coset_len_(m.rows()) {
    Matrix stacked = Matrix::vstack(g_s, m);
    if (stacked.rows() != stacked.cols())
        throw Error("SingularBasis", "stacked (G_S; M) is not square");
    try {
        basis_inv_ = inverse(stacked);
    } catch (const Error&) {
        throw Error("SingularBasis", "rank(G_S; M) < 2n");
    }
}

Vec CosetDecoder::decode(const Vec& a) const {
    if (a.size() != basis_inv_.rows()) throw Error("LengthMismatch", "vector width mismatch");
    Vec y = vec_mat(a, basis_inv_); // A = y * (G_S; M)
    return Vec(y.begin() + static_cast<long>(gs_rows_), y.end());
}

} // namespace qpir
