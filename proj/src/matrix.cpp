#include "blockdescent/matrix.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace bd {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Multiplication by a scalar on bit planes: out plane t collects the input
// planes j for which bit t of a*x^j is set.
struct ScalarPlanes {
  unsigned n = 0;
  std::array<std::uint16_t, 16> ax{};  // a * x^j

  ScalarPlanes(const Field& F, Elt a) : n(F.degree()) {
    for (unsigned j = 0; j < n; ++j) ax[j] = F.mul(a, static_cast<Elt>(1u << j));
  }
  // dst ^= a * src on words [w0, W) of each plane; planes are W apart.
  void axpy(std::uint64_t* dst, const std::uint64_t* src, std::size_t W, std::size_t w0) const {
    for (unsigned j = 0; j < n; ++j) {
      const std::uint64_t* s = src + j * W;
      for (unsigned t = 0; t < n; ++t) {
        if (!((ax[j] >> t) & 1u)) continue;
        std::uint64_t* d = dst + t * W;
        for (std::size_t w = w0; w < W; ++w) d[w] ^= s[w];
      }
    }
  }
  void scale(std::uint64_t* row, std::size_t W, std::size_t w0) const {
    std::vector<std::uint64_t> tmp(n * W, 0);
    axpy(tmp.data(), row, W, w0);
    for (unsigned t = 0; t < n; ++t)
      for (std::size_t w = w0; w < W; ++w) row[t * W + w] = tmp[t * W + w];
  }
};

inline Elt packed_get(const std::uint64_t* row, unsigned n, std::size_t W, std::size_t col) {
  Elt e = 0;
  const std::size_t w = col >> 6;
  const unsigned b = col & 63;
  for (unsigned t = 0; t < n; ++t) e |= static_cast<Elt>(((row[t * W + w] >> b) & 1u) << t);
  return e;
}

inline bool packed_nonzero(const std::uint64_t* row, unsigned n, std::size_t W, std::size_t col) {
  const std::size_t w = col >> 6;
  const std::uint64_t m = std::uint64_t{1} << (col & 63);
  for (unsigned t = 0; t < n; ++t)
    if (row[t * W + w] & m) return true;
  return false;
}

void pack_vec(std::span<const Elt> v, unsigned n, std::size_t W, std::uint64_t* out) {
  std::memset(out, 0, sizeof(std::uint64_t) * n * W);
  for (std::size_t c = 0; c < v.size(); ++c) {
    Elt e = v[c];
    if (!e) continue;
    for (unsigned t = 0; t < n; ++t)
      if ((e >> t) & 1u) out[t * W + (c >> 6)] |= std::uint64_t{1} << (c & 63);
  }
}

void unpack_vec(const std::uint64_t* in, unsigned n, std::size_t W, std::size_t cols, Elt* out) {
  std::fill(out, out + cols, Elt{0});
  for (unsigned t = 0; t < n; ++t) {
    const std::uint64_t* pl = in + t * W;
    for (std::size_t w = 0; w < W; ++w) {
      std::uint64_t x = pl[w];
      while (x) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(x));
        x &= x - 1;
        out[w * 64 + b] |= static_cast<Elt>(1u << t);
      }
    }
  }
}

// Row-major bit-plane matrix: row r occupies n*W consecutive words.
struct Packed {
  std::size_t rows = 0, cols = 0, W = 0;
  unsigned n = 1;
  std::vector<std::uint64_t> d;

  Packed(std::size_t r, std::size_t c, unsigned planes)
      : rows(r), cols(c), W(words_for(c)), n(planes), d(r * planes * words_for(c), 0) {}
  std::uint64_t* row(std::size_t r) { return d.data() + r * n * W; }
  const std::uint64_t* row(std::size_t r) const { return d.data() + r * n * W; }
};

Packed pack(const Matrix& m) {
  Packed p(m.rows(), m.cols(), m.field()->degree());
  for (std::size_t r = 0; r < m.rows(); ++r) pack_vec(m.row(r), p.n, p.W, p.row(r));
  return p;
}

Matrix unpack(const Packed& p, const FieldPtr& f) {
  Matrix m(f, p.rows, p.cols);
  for (std::size_t r = 0; r < p.rows; ++r) unpack_vec(p.row(r), p.n, p.W, p.cols, m.row(r).data());
  return m;
}

Matrix mul_packed(const Matrix& a, const Matrix& b) {
  const FieldPtr& f = a.field();
  const unsigned n = f->degree();
  const unsigned un = 2 * n - 1;
  Packed A = pack(a), B = pack(b);
  const std::size_t W = B.W;
  const std::size_t R = a.rows(), K = a.cols();
  std::vector<std::uint64_t> U(R * un * W, 0);
  if (K <= 64 || R <= 8) {
    for (std::size_t i = 0; i < R; ++i) {
      const std::uint64_t* ar = A.row(i);
      std::uint64_t* ur = U.data() + i * un * W;
      for (unsigned s = 0; s < n; ++s) {
        for (std::size_t w = 0; w < A.W; ++w) {
          std::uint64_t x = ar[s * A.W + w];
          while (x) {
            std::size_t k = w * 64 + static_cast<unsigned>(__builtin_ctzll(x));
            x &= x - 1;
            const std::uint64_t* br = B.row(k);
            for (unsigned t = 0; t < n; ++t) {
              std::uint64_t* dst = ur + (s + t) * W;
              const std::uint64_t* src = br + t * W;
              for (std::size_t v = 0; v < W; ++v) dst[v] ^= src[v];
            }
          }
        }
      }
    }
  } else {
    // Method of four Russians: XOR tables over groups of 8 rows of B.
    const std::size_t stride = n * W;
    std::vector<std::uint64_t> table(256 * stride);
    for (std::size_t k0 = 0; k0 < K; k0 += 8) {
      const std::size_t kb = std::min<std::size_t>(8, K - k0);
      std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(stride), 0);
      for (std::size_t idx = 1; idx < (std::size_t{1} << kb); ++idx) {
        unsigned low = static_cast<unsigned>(__builtin_ctzll(idx));
        const std::uint64_t* prev = table.data() + (idx & (idx - 1)) * stride;
        const std::uint64_t* br = B.row(k0 + low);
        std::uint64_t* dst = table.data() + idx * stride;
        for (std::size_t v = 0; v < stride; ++v) dst[v] = prev[v] ^ br[v];
      }
      const std::size_t w = k0 >> 6;
      const unsigned sh = k0 & 63;
      const std::uint64_t mask = (std::uint64_t{1} << kb) - 1;
      for (std::size_t i = 0; i < R; ++i) {
        const std::uint64_t* ar = A.row(i);
        std::uint64_t* ur = U.data() + i * un * W;
        for (unsigned s = 0; s < n; ++s) {
          std::size_t idx = static_cast<std::size_t>((ar[s * A.W + w] >> sh) & mask);
          if (!idx) continue;
          const std::uint64_t* src = table.data() + idx * stride;
          for (unsigned t = 0; t < n; ++t) {
            std::uint64_t* dst = ur + (s + t) * W;
            const std::uint64_t* sp = src + t * W;
            for (std::size_t v = 0; v < W; ++v) dst[v] ^= sp[v];
          }
        }
      }
    }
  }
  // Reduce planes of degree >= n using x^n = sum poly_j x^j.
  const auto& poly = f->polynomial();
  Packed C(R, b.cols(), n);
  for (std::size_t i = 0; i < R; ++i) {
    std::uint64_t* ur = U.data() + i * un * W;
    for (unsigned m = un; m-- > n;) {
      const std::uint64_t* src = ur + m * W;
      for (unsigned j = 0; j < n; ++j) {
        if (!(poly[j] & 1u)) continue;
        std::uint64_t* dst = ur + (m - n + j) * W;
        for (std::size_t v = 0; v < W; ++v) dst[v] ^= src[v];
      }
    }
    std::memcpy(C.row(i), ur, sizeof(std::uint64_t) * n * W);
  }
  return unpack(C, f);
}

std::vector<std::size_t> rref_packed(Packed& P, const Field& F) {
  const unsigned n = P.n;
  const std::size_t W = P.W;
  const std::size_t stride = n * W;
  std::vector<std::size_t> pivots;
  const bool table_mults = F.order() <= 16;
  std::vector<std::uint64_t> mults;
  std::vector<std::uint64_t> tmp(stride);
  std::size_t r = 0;
  for (std::size_t c = 0; c < P.cols && r < P.rows; ++c) {
    std::size_t found = P.rows;
    for (std::size_t i = r; i < P.rows; ++i)
      if (packed_nonzero(P.row(i), n, W, c)) {
        found = i;
        break;
      }
    if (found == P.rows) continue;
    if (found != r) std::swap_ranges(P.row(found), P.row(found) + stride, P.row(r));
    const std::size_t w0 = c >> 6;
    std::uint64_t* pr = P.row(r);
    Elt lead = packed_get(pr, n, W, c);
    if (lead != 1) ScalarPlanes(F, F.inv(lead)).scale(pr, W, w0);
    if (table_mults) {
      mults.assign(F.order() * stride, 0);
      for (unsigned a = 1; a < F.order(); ++a)
        ScalarPlanes(F, static_cast<Elt>(a)).axpy(mults.data() + a * stride, pr, W, w0);
    }
    for (std::size_t i = 0; i < P.rows; ++i) {
      if (i == r) continue;
      std::uint64_t* rr = P.row(i);
      Elt a = packed_get(rr, n, W, c);
      if (!a) continue;
      if (table_mults) {
        const std::uint64_t* src = mults.data() + a * stride;
        for (unsigned t = 0; t < n; ++t)
          for (std::size_t w = w0; w < W; ++w) rr[t * W + w] ^= src[t * W + w];
      } else {
        ScalarPlanes(F, a).axpy(rr, pr, W, w0);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::size_t> rref_generic(Matrix& m) {
  const Field& F = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t C = m.cols();
  for (std::size_t c = 0; c < C && r < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (m(i, c)) {
        found = i;
        break;
      }
    if (found == m.rows()) continue;
    if (found != r) std::swap_ranges(m.row(found).begin(), m.row(found).end(), m.row(r).begin());
    auto pr = m.row(r);
    Elt inv = F.inv(pr[c]);
    for (std::size_t j = c; j < C; ++j) pr[j] = F.mul(pr[j], inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto rr = m.row(i);
      Elt a = rr[c];
      if (!a) continue;
      Elt na = F.neg(a);
      for (std::size_t j = c; j < C; ++j)
        if (pr[j]) rr[j] = F.add(rr[j], F.mul(na, pr[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (*a.field() != *b.field()) throw FieldMismatch("matrices over different fields");
}

}  // namespace

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elt> data)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ShapeMismatch("matrix data has wrong length");
}

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(std::move(f), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeMismatch("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::from_columns(FieldPtr f, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(std::move(f), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw ShapeMismatch("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(*this, o);
  if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
  if (rows_ == 0 || o.cols_ == 0 || cols_ == 0) return Matrix(field_, rows_, o.cols_);
  if (field_->characteristic() == 2) return mul_packed(*this, o);
  const Field& F = *field_;
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto out = r.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      Elt a = (*this)(i, k);
      if (!a) continue;
      auto br = o.row(k);
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (br[j]) out[j] = F.add(out[j], F.mul(a, br[j]));
    }
  }
  return r;
}

Vec Matrix::operator*(std::span<const Elt> v) const {
  if (v.size() != cols_) throw ShapeMismatch("matrix-vector shape mismatch");
  const Field& F = *field_;
  Vec r(rows_, 0);
  if (F.characteristic() == 2) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Elt acc = 0;
      const Elt* rr = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (rr[j] && v[j]) acc ^= F.mul(rr[j], v[j]);
      r[i] = acc;
    }
    return r;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    Elt acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j]) acc = F.add(acc, F.mul((*this)(i, j), v[j]));
    r[i] = acc;
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix difference shape mismatch");
  Matrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->sub(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::scaled(Elt s) const {
  return map([&](Elt x) { return field_->mul(x, s); });
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
         (!field_ || !o.field_ || *field_ == *o.field_);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elt x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc, r.row(i).begin());
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), row(r0 + i).begin() + static_cast<std::ptrdiff_t>(c0));
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
  return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix r(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row(idx[i]).begin(), row(idx[i]).end(), r.row(i).begin());
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("hstack row mismatch");
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("vstack column mismatch");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Field& F = *a.field();
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elt x = a(i, j);
      if (!x) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = F.mul(x, b(k, l));
    }
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Echelon rref(const Matrix& a) {
  if (a.field()->characteristic() == 2 && !a.empty()) {
    Packed p = pack(a);
    auto piv = rref_packed(p, *a.field());
    return {unpack(p, a.field()), std::move(piv)};
  }
  Matrix m(a);
  auto piv = rref_generic(m);
  return {std::move(m), std::move(piv)};
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return rref(a).pivots.size();
}

Matrix nullspace(const Matrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return Matrix::identity(a.field(), n);
  Echelon e = rref(a);
  const Field& F = *a.field();
  std::vector<char> is_piv(n, 0);
  for (auto c : e.pivots) is_piv[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix k(a.field(), n, free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k(free[t], t) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], t) = F.neg(e.reduced(r, free[t]));
  }
  return k;
}

Matrix column_space(const Matrix& a) {
  if (a.empty()) return Matrix(a.field(), a.rows(), 0);
  Echelon e = rref(a.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), a.rows()).transpose();
}

std::optional<LinearSolution> solve_linear(const Matrix& a, const Matrix& b) {
  if (*a.field() != *b.field()) throw FieldMismatch("solve_linear: field mismatch");
  if (a.rows() != b.rows()) throw ShapeMismatch("solve_linear: row count mismatch");
  const Field& F = *a.field();
  const std::size_t n = a.cols(), m = b.cols();
  Matrix kernel = nullspace(a);
  Matrix x(a.field(), n, m);
  if (a.rows() == 0) return LinearSolution{x, kernel};
  Echelon e = rref(hstack(a, b));
  for (auto c : e.pivots)
    if (c >= n) return std::nullopt;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < m; ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
  (void)F;
  return LinearSolution{std::move(x), std::move(kernel)};
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  if (n == 0) return a;
  Echelon e = rref(hstack(a, Matrix::identity(a.field(), n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Elt trace(const Matrix& a) {
  Elt t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t = a.field()->add(t, a(i, i));
  return t;
}

Matrix extend_matrix(const Matrix& m, const FieldTower& tower) {
  if (*m.field() != *tower.base()) throw FieldMismatch("extend_matrix: matrix not over the base field");
  Matrix r = m.map([&](Elt x) { return tower.embed(x); });
  return r.with_field(tower.ext());
}

// ---------------------------------------------------------------- vectors

Vec vec_add(const Field& f, std::span<const Elt> a, std::span<const Elt> b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const Field& f, std::span<const Elt> a, std::span<const Elt> b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& f, Elt s, std::span<const Elt> a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(s, a[i]);
  return r;
}

void vec_axpy(const Field& f, Elt s, std::span<const Elt> x, std::span<Elt> y) {
  if (x.size() != y.size()) throw ShapeMismatch("vector lengths differ");
  if (!s) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) y[i] = f.add(y[i], f.mul(s, x[i]));
}

bool vec_is_zero(std::span<const Elt> a) {
  return std::all_of(a.begin(), a.end(), [](Elt x) { return x == 0; });
}

// ---------------------------------------------------------------- PackedVec

PackedVec::PackedVec(FieldPtr f, std::size_t n) : field_(std::move(f)), n_(n) {
  if (field_->characteristic() == 2) {
    words_ = words_for(n_);
    bits_.assign(words_ * field_->degree(), 0);
  } else {
    plain_.assign(n_, 0);
  }
}

PackedVec::PackedVec(FieldPtr f, std::span<const Elt> v) : PackedVec(std::move(f), v.size()) {
  if (words_)
    pack_vec(v, field_->degree(), words_, bits_.data());
  else
    std::copy(v.begin(), v.end(), plain_.begin());
}

void PackedVec::axpy(Elt a, const PackedVec& x) {
  if (x.n_ != n_) throw ShapeMismatch("PackedVec length mismatch");
  if (!a) return;
  const Field& F = *field_;
  if (words_) {
    if (a == 1) {
      for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= x.bits_[w];
      return;
    }
    ScalarPlanes(F, a).axpy(bits_.data(), x.bits_.data(), words_, 0);
    return;
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (x.plain_[i]) plain_[i] = F.add(plain_[i], F.mul(a, x.plain_[i]));
}

Vec PackedVec::unpack() const {
  if (!words_) return plain_;
  Vec out(n_);
  if (n_) unpack_vec(bits_.data(), field_->degree(), words_, n_, out.data());
  return out;
}

Elt PackedVec::get(std::size_t i) const {
  if (!words_) return plain_[i];
  return packed_get(bits_.data(), field_->degree(), words_, i);
}

bool PackedVec::is_zero() const {
  if (words_) return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(plain_.begin(), plain_.end(), [](Elt x) { return x == 0; });
}

// ---------------------------------------------------------------- RowSpace

RowSpace::RowSpace(FieldPtr f, std::size_t ambient) : field_(std::move(f)), n_(ambient) {
  if (field_->characteristic() == 2) words_ = words_for(n_);
}

Vec RowSpace::reduce(std::span<const Elt> v) const {
  if (v.size() != n_) throw ShapeMismatch("RowSpace: vector length mismatch");
  const Field& F = *field_;
  if (words_) {
    const unsigned pl = F.degree();
    std::vector<std::uint64_t> buf(pl * words_);
    pack_vec(v, pl, words_, buf.data());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      Elt a = v[pivots_[i]];
      if (!a) continue;
      ScalarPlanes(F, a).axpy(buf.data(), prow_[i].data(), words_, 0);
    }
    Vec out(n_);
    unpack_vec(buf.data(), pl, words_, n_, out.data());
    return out;
  }
  Vec out(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Elt a = v[pivots_[i]];
    if (!a) continue;
    Elt na = F.neg(a);
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < n_; ++j)
      if (r[j]) out[j] = F.add(out[j], F.mul(na, r[j]));
  }
  return out;
}

bool RowSpace::contains(std::span<const Elt> v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Elt x) { return x == 0; });
}

bool RowSpace::insert(std::span<const Elt> v) {
  Vec r = reduce(v);
  std::size_t c = 0;
  while (c < n_ && r[c] == 0) ++c;
  if (c == n_) return false;
  const Field& F = *field_;
  Elt inv = F.inv(r[c]);
  for (auto& x : r) x = F.mul(x, inv);
  auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin());
  if (words_) {
    const unsigned pl = F.degree();
    std::vector<std::uint64_t> nr(pl * words_);
    pack_vec(r, pl, words_, nr.data());
    for (auto& row : prow_) {
      Elt a = packed_get(row.data(), pl, words_, c);
      if (a) ScalarPlanes(F, a).axpy(row.data(), nr.data(), words_, 0);
    }
    prow_.insert(prow_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(nr));
  } else {
    for (auto& row : rows_) {
      Elt a = row[c];
      if (!a) continue;
      Elt na = F.neg(a);
      for (std::size_t j = 0; j < n_; ++j)
        if (r[j]) row[j] = F.add(row[j], F.mul(na, r[j]));
    }
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  }
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
  return true;
}

void RowSpace::insert_rows(const Matrix& m) {
  if (m.rows() == 0) return;
  if (m.cols() != n_) throw ShapeMismatch("RowSpace: row length mismatch");
  if (pivots_.empty() && m.rows() > 8) {
    // Bulk path: one full row reduction.
    Echelon e = rref(m);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) insert(e.reduced.row(i));
    return;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) insert(m.row(i));
}

Vec RowSpace::coordinates(std::span<const Elt> v) const {
  Vec c(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Matrix RowSpace::basis() const {
  Matrix m(field_, pivots_.size(), n_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (words_)
      unpack_vec(prow_[i].data(), field_->degree(), words_, n_, m.row(i).data());
    else
      std::copy(rows_[i].begin(), rows_[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<std::size_t> RowSpace::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Matrix RowSpace::kernel() const {
  std::vector<std::size_t> free = free_columns();
  Matrix b = basis();
  const Field& F = *field_;
  Matrix k(field_, n_, free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k(free[t], t) = 1;
    for (std::size_t r = 0; r < pivots_.size(); ++r) k(pivots_[r], t) = F.neg(b(r, free[t]));
  }
  return k;
}

}  // namespace bd
