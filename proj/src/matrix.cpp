#include "qct/matrix.hpp"

#include <algorithm>
#include <bit>

namespace qct {

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("ragged matrix: row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] >= m.field_->order()) throw Error("matrix entry outside the field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::vector<Elem>> Matrix::to_rows() const {
  std::vector<std::vector<Elem>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

void Matrix::append_row(std::span<const Elem> r) {
  if (r.size() != cols_) throw Error("append_row: length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Matrix::truncate_rows(std::size_t n) {
  if (n >= rows_) return;
  rows_ = n;
  data_.resize(rows_ * cols_);
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) out(r, i) = (*this)(r, cols[i]);
  }
  return out;
}

Matrix Matrix::select_rows(std::size_t first, std::size_t count) const {
  Matrix out(field_, count, cols_);
  for (std::size_t r = 0; r < count; ++r) {
    std::copy(row(first + r).begin(), row(first + r).end(), out.row(r).begin());
  }
  return out;
}

void axpy(const Field& f, std::span<Elem> v, Elem c, std::span<const Elem> w) {
  if (c == 0) return;
  if (f.characteristic() == 2 && c == 1) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= w[i];
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i]) v[i] = f.add(v[i], f.mul(c, w[i]));
  }
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) acc = f.add(acc, f.mul(a[i], b[i]));
  }
  return acc;
}

std::vector<Elem> vec_mat(const Field& f, std::span<const Elem> msg, const Matrix& m) {
  std::vector<Elem> out(m.cols(), 0);
  for (std::size_t r = 0; r < msg.size(); ++r) axpy(f, out, msg[r], m.row(r));
  return out;
}

unsigned hamming_weight(std::span<const Elem> v) {
  return static_cast<unsigned>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

namespace {

std::vector<std::size_t> rref_gf2(Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (m(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  auto rowp = [&](std::size_t r) { return bits.data() + r * words; };
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows && !(rowp(piv)[w] & mask)) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(rowp(piv), rowp(piv) + words, rowp(rank));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && (rowp(r)[w] & mask)) {
        std::uint64_t* dst = rowp(r);
        const std::uint64_t* src = rowp(rank);
        for (std::size_t k = 0; k < words; ++k) dst[k] ^= src[k];
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = (rowp(r)[c / 64] >> (c % 64)) & 1;
  }
  m.truncate_rows(rank);
  return pivots;
}

}  // namespace

std::vector<std::size_t> rref(Matrix& m) {
  if (m.rows() == 0) return {};
  const Field& f = m.field();
  if (f.order() == 2) return rref_gf2(m);
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, rank);
    Elem s = f.inv(m(rank, c));
    if (s != 1) {
      for (auto& x : m.row(rank)) x = f.mul(x, s);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != rank && m(r, c) != 0) axpy(f, m.row(r), f.neg(m(r, c)), m.row(rank));
    }
    pivots.push_back(c);
    ++rank;
  }
  m.truncate_rows(rank);
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

Matrix nullspace(const Matrix& m) {
  Matrix r = m;
  auto pivots = rref(r);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix out(m.field_ptr(), 0, m.cols());
  std::vector<Elem> v(m.cols());
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, fc));
    out.append_row(v);
  }
  rref(out);
  return out;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field_ptr(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error("matrix is singular");
  Matrix out(m.field_ptr(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  }
  return out;
}

}  // namespace qct
