#include "qpir/linalg.hpp"

#include <algorithm>

namespace qpir {

Matrix Matrix::identity(const Field* field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
    return m;
}

Matrix Matrix::from_rows(const Field* field, const std::vector<Vec>& rows) {
    if (rows.empty()) return Matrix(field, 0, 0);
    Matrix m(field, rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw Error("DimensionMismatch", "ragged rows");
        for (size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
        for (size_t c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
    for (size_t r = 0; r < b.rows_; ++r)
        for (size_t c = 0; c < b.cols_; ++c) m.at(a.rows_ + r, a.cols_ + c) = b.at(r, c);
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.cols_ != b.cols_) throw Error("DimensionMismatch", "vstack width mismatch");
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
        for (size_t c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
    for (size_t r = 0; r < b.rows_; ++r)
        for (size_t c = 0; c < a.cols_; ++c) m.at(a.rows_ + r, c) = b.at(r, c);
    return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error("DimensionMismatch", "hstack height mismatch");
    Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
    for (size_t r = 0; r < a.rows_; ++r) {
        for (size_t c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
        for (size_t c = 0; c < b.cols_; ++c) m.at(r, a.cols_ + c) = b.at(r, c);
    }
    return m;
}

Vec Matrix::row(size_t r) const {
    Vec v(cols_);
    for (size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Vec Matrix::col(size_t c) const {
    Vec v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void Matrix::set_row(size_t r, const Vec& v) {
    if (v.size() != cols_) throw Error("DimensionMismatch", "set_row width mismatch");
    for (size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
}

Matrix Matrix::transposed() const {
    Matrix m(field_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix product shape mismatch");
    Matrix m(field_, rows_, o.cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t k = 0; k < cols_; ++k) {
            FieldElement a = at(r, k);
            if (a.is_zero()) continue;
            for (size_t c = 0; c < o.cols_; ++c)
                m.at(r, c) += a * o.at(k, c);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "sum shape mismatch");
    Matrix m(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "diff shape mismatch");
    Matrix m(field_, rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](FieldElement e) { return e.is_zero(); });
}

Matrix Matrix::select_rows(const std::vector<size_t>& idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < cols_; ++c) m.at(r, c) = at(idx[r], c);
    return m;
}

Matrix Matrix::select_cols(const std::vector<size_t>& idx) const {
    Matrix m(field_, rows_, idx.size());
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < idx.size(); ++c) m.at(r, c) = at(r, idx[c]);
    return m;
}

RrefResult rref(const Matrix& m) {
    RrefResult res{m, 0, {}};
    Matrix& a = res.R;
    size_t pr = 0;
    for (size_t pc = 0; pc < a.cols() && pr < a.rows(); ++pc) {
        size_t pivot = pr;
        while (pivot < a.rows() && a.at(pivot, pc).is_zero()) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != pr)
            for (size_t c = 0; c < a.cols(); ++c) std::swap(a.at(pr, c), a.at(pivot, c));
        FieldElement inv = a.at(pr, pc).inv();
        for (size_t c = pc; c < a.cols(); ++c) a.at(pr, c) *= inv;
        for (size_t r = 0; r < a.rows(); ++r) {
            if (r == pr || a.at(r, pc).is_zero()) continue;
            FieldElement f = a.at(r, pc);
            for (size_t c = pc; c < a.cols(); ++c) a.at(r, c) -= f * a.at(pr, c);
        }
        res.pivots.push_back(pc);
        ++pr;
    }
    res.rank = pr;
    return res;
}

size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    const Field* f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(m.cols(), f->zero());
        v[fc] = f->one();
        for (size_t pr = 0; pr < rr.rank; ++pr)
            v[rr.pivots[pr]] = -rr.R.at(pr, fc);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return Matrix(f, 0, m.cols());
    return Matrix::from_rows(f, basis);
}

Vec solve_left(const Matrix& a, const Vec& b) {
    if (b.size() != a.cols()) throw Error("DimensionMismatch", "solve_left width mismatch");
    // x * A = b  <=>  A^T x^T = b^T. Eliminate on (A^T | b^T).
    const Field* f = a.field();
    Matrix aug(f, a.cols(), a.rows() + 1);
    for (size_t r = 0; r < a.cols(); ++r) {
        for (size_t c = 0; c < a.rows(); ++c) aug.at(r, c) = a.at(c, r);
        aug.at(r, a.rows()) = b[r];
    }
    RrefResult rr = rref(aug);
    Vec x(a.rows(), f->zero());
    for (size_t pr = 0; pr < rr.rank; ++pr) {
        if (rr.pivots[pr] == a.rows())
            throw Error("Inconsistent", "b is not in the row space of A");
        x[rr.pivots[pr]] = rr.R.at(pr, a.rows());
    }
    return x;
}

bool in_row_space(const Vec& v, const Matrix& m) {
    if (v.size() != m.cols()) throw Error("DimensionMismatch", "width mismatch");
    Matrix stacked = Matrix::vstack(m, Matrix::from_rows(m.field(), {v}));
    return rank(stacked) == rank(m);
}

bool same_row_space(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return false;
    size_t ra = rank(a), rb = rank(b);
    return ra == rb && rank(Matrix::vstack(a, b)) == ra;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("Singular", "inverse of non-square matrix");
    Matrix aug = Matrix::hstack(m, Matrix::identity(m.field(), m.rows()));
    RrefResult rr = rref(aug);
    if (rr.rank < m.rows() || rr.pivots[m.rows() - 1] >= m.rows())
        throw Error("Singular", "matrix not invertible");
    std::vector<size_t> right(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) right[i] = m.rows() + i;
    return rr.R.select_cols(right);
}

Vec vec_mat(const Vec& x, const Matrix& m) {
    if (x.size() != m.rows()) throw Error("DimensionMismatch", "vec_mat shape mismatch");
    const Field* f = m.field();
    Vec out(m.cols(), f->zero());
    for (size_t r = 0; r < m.rows(); ++r) {
        if (x[r].is_zero()) continue;
        for (size_t c = 0; c < m.cols(); ++c) out[c] += x[r] * m.at(r, c);
    }
    return out;
}

FieldElement dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "dot length mismatch");
    if (a.empty()) throw Error("DimensionMismatch", "dot of empty vectors");
    FieldElement acc = a[0].field()->zero();
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Vec star(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "star length mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

Vec basis_vec(const Field* field, size_t len, size_t pos) {
    if (pos >= len) throw Error("IndexOutOfRange", "basis vector position");
    Vec v(len, field->zero());
    v[pos] = field->one();
    return v;
}

size_t coord(size_t a, size_t b, size_t beta, size_t alpha) {
    if (a >= alpha || b >= beta) throw Error("IndexOutOfRange", "paired coordinate");
    return a * beta + b;
}

} // namespace qpir
