#pragma once

// Dense matrices over a finite field and the Gaussian-elimination routines the
// code machinery is built on.

#include <cstddef>
#include <span>
#include <vector>

#include "qct/galois.hpp"

namespace qct {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows, std::size_t cols);
  static Matrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<std::vector<Elem>> to_rows() const;

  void append_row(std::span<const Elem> r);
  void truncate_rows(std::size_t n);
  void swap_rows(std::size_t a, std::size_t b);
  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::size_t first, std::size_t count) const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
           (field_ == o.field_ || (field_ && o.field_ && field_->same_as(*o.field_)));
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// In-place reduced row echelon form with pivots chosen left to right; zero
// rows are dropped. Returns the pivot columns. GF(2) is bit-packed.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
// Basis of {x : M x^T = 0}, in RREF.
Matrix nullspace(const Matrix& m);
// Inverse of a square matrix; throws Error when singular.
Matrix inverse(const Matrix& m);

// v <- v + c * w over the field.
void axpy(const Field& f, std::span<Elem> v, Elem c, std::span<const Elem> w);
// Standard inner product.
Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
// Row vector times matrix: msg (length rows) * M.
std::vector<Elem> vec_mat(const Field& f, std::span<const Elem> msg, const Matrix& m);
unsigned hamming_weight(std::span<const Elem> v);

}  // namespace qct
