#pragma once

#include <cstddef>
#include <vector>

#include "qpir/galois.hpp"

namespace qpir {

using Vec = std::vector<FieldElement>;

/// Dense matrix over a single GF(q), row-major. Desk scale only: exact
/// arithmetic, no pivot magnitude concerns, deterministic first-nonzero
/// pivoting everywhere.
class Matrix {
  public:
    Matrix() : field_(nullptr), rows_(0), cols_(0) {}
    Matrix(const Field* field, size_t rows, size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field->zero()) {}

    static Matrix identity(const Field* field, size_t n);
    static Matrix from_rows(const Field* field, const std::vector<Vec>& rows);
    /// diag(A, B): block-diagonal stack.
    static Matrix block_diag(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix hstack(const Matrix& a, const Matrix& b);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field* field() const { return field_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    FieldElement& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    FieldElement at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    Vec row(size_t r) const;
    Vec col(size_t c) const;
    void set_row(size_t r, const Vec& v);

    Matrix transposed() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;

    /// Rows selected by index list.
    Matrix select_rows(const std::vector<size_t>& idx) const;
    /// Columns selected by index list.
    Matrix select_cols(const std::vector<size_t>& idx) const;

  private:
    const Field* field_;
    size_t rows_, cols_;
    std::vector<FieldElement> data_;
};

struct RrefResult {
    Matrix R;
    size_t rank = 0;
    std::vector<size_t> pivots; // 0-based pivot column per pivot row
};

RrefResult rref(const Matrix& m);
size_t rank(const Matrix& m);

/// Basis of the right null space {v : M v^T = 0}; rows are basis vectors.
Matrix kernel(const Matrix& m);

/// Solves x * A = b. Throws Inconsistent if b is outside the row space.
Vec solve_left(const Matrix& a, const Vec& b);

bool in_row_space(const Vec& v, const Matrix& m);

/// True iff the two row spaces coincide.
bool same_row_space(const Matrix& a, const Matrix& b);

Matrix inverse(const Matrix& m); // throws Singular

Vec vec_mat(const Vec& x, const Matrix& m); // x * M
FieldElement dot(const Vec& a, const Vec& b);
Vec star(const Vec& a, const Vec& b); // component-wise product

/// Standard basis row vector e^len_pos (0-based position).
Vec basis_vec(const Field* field, size_t len, size_t pos);

/// Paired-index helpers, 0-based: coordinate (a, b) in a length alpha*beta
/// vector maps to position a*beta + b.
size_t coord(size_t a, size_t b, size_t beta, size_t alpha);

} // namespace qpir
