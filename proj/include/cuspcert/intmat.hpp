#pragma once

// Exact integer matrices. Entries are arbitrary precision (q^n for q up to 32
// together with normal form intermediates exceeds 64 bits), and nothing in
// this module ever touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cuspcert {

using Int = mpz_class;
using Rat = mpq_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Int>& d);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
  static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<Int> row(std::size_t i) const;
  std::vector<Int> column(std::size_t j) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const Int& c) const;
  IntMatrix transposed() const;

  // matrix times column vector
  std::vector<Int> apply(const std::vector<Int>& x) const;

  bool operator==(const IntMatrix& rhs) const;
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }
  bool is_zero() const;

  // elementary row/column operations, used by the normal form routines
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& c);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> e_;
};

// Exact determinant, fraction free elimination.
Int determinant(const IntMatrix& m);

// Inverse of a matrix with determinant +1 or -1, computed over the integers
// via the adjugate. Throws if the determinant is anything else.
IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace cuspcert
