#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blockdescent/field.hpp"

namespace bd {

using Vec = std::vector<Elt>;

/// Dense matrix over a finite field, row-major.
///
/// Products and row reductions in characteristic 2 run on a bit-plane
/// representation (plane t holds the x^t coefficients, 64 entries per word);
/// other characteristics use table arithmetic on the entries directly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elt> data);

  static Matrix identity(FieldPtr f, std::size_t n);
  static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(FieldPtr f, const std::vector<Vec>& cols, std::size_t rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elt operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const Elt> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elt> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  const std::vector<Elt>& data() const { return data_; }

  Matrix operator*(const Matrix& o) const;
  Vec operator*(std::span<const Elt> v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elt s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  template <class Fn>
  Matrix map(Fn fn) const {
    Matrix r(*this);
    for (auto& x : r.data_) x = fn(x);
    return r;
  }
  /// Same entries viewed over another field (caller guarantees validity).
  Matrix with_field(FieldPtr f) const {
    Matrix r(*this);
    r.field_ = std::move(f);
    return r;
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elt> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix reduced;                    ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

Echelon rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Columns form a basis of {x : a x = 0}.
Matrix nullspace(const Matrix& a);
/// Columns form a basis of the column space.
Matrix column_space(const Matrix& a);

struct LinearSolution {
  Matrix particular;  ///< X with A X = B
  Matrix kernel;      ///< columns span ker A
};

/// All solutions of A X = B, or nullopt when inconsistent.
std::optional<LinearSolution> solve_linear(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);
Elt trace(const Matrix& a);

/// Entrywise image of a base-field matrix in the extension field.
Matrix extend_matrix(const Matrix& m, const FieldTower& tower);

Vec vec_add(const Field& f, std::span<const Elt> a, std::span<const Elt> b);
Vec vec_sub(const Field& f, std::span<const Elt> a, std::span<const Elt> b);
Vec vec_scale(const Field& f, Elt s, std::span<const Elt> a);
/// y += s x
void vec_axpy(const Field& f, Elt s, std::span<const Elt> x, std::span<Elt> y);
bool vec_is_zero(std::span<const Elt> a);

/// A flat vector over a field supporting fast y += a x.  Bit-plane packed in
/// characteristic 2, plain entries otherwise.
class PackedVec {
 public:
  PackedVec() = default;
  PackedVec(FieldPtr f, std::size_t n);
  PackedVec(FieldPtr f, std::span<const Elt> v);

  std::size_t size() const { return n_; }
  void axpy(Elt a, const PackedVec& x);
  Vec unpack() const;
  Elt get(std::size_t i) const;
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t n_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
  Vec plain_;
};

/// A subspace of F^n kept in reduced row echelon form.
///
/// Rows are stored bit-plane packed in characteristic 2.  Vectors can be
/// inserted incrementally; reduce() returns the canonical representative
/// modulo the subspace (zero at every pivot column).
class RowSpace {
 public:
  RowSpace(FieldPtr f, std::size_t ambient);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const FieldPtr& field() const { return field_; }

  /// Returns true when v was not already in the span.
  bool insert(std::span<const Elt> v);
  /// Inserts every row of m.
  void insert_rows(const Matrix& m);
  Vec reduce(std::span<const Elt> v) const;
  bool contains(std::span<const Elt> v) const;
  /// Coordinates of v (which must lie in the space) along basis().
  Vec coordinates(std::span<const Elt> v) const;
  /// Rows: the reduced echelon basis, in pivot order.
  Matrix basis() const;
  /// Non-pivot columns, i.e. the standard complement.
  std::vector<std::size_t> free_columns() const;
  /// Columns form a basis of the vectors orthogonal to every row, i.e. the
  /// solutions x of B x = 0 where B is basis().
  Matrix kernel() const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;  // ascending; row i has pivot pivots_[i]
  std::vector<Vec> rows_;            // generic storage
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> prow_;  // packed storage (characteristic 2)
};

}  // namespace bd
