#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Convention used throughout mvkit: the matrix of a homomorphism has one
// column per source generator, so a map Z^n -> Z^m is an m x n matrix acting
// on column vectors.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvkit {

using Integer = mpz_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension or endpoint mismatch, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Dense row-major matrix of arbitrary-precision integers. 0 x n and n x 0
/// matrices are legal.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix diagonal(const std::vector<Integer>& diag);
  static IntMatrix column(const std::vector<Integer>& entries);
  static IntMatrix unit_column(std::size_t n, std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix col(std::size_t j) const;
  void set_col(std::size_t j, const IntMatrix& column);
  IntMatrix select_rows(std::size_t begin, std::size_t end) const;
  IntMatrix select_rows(const std::vector<std::size_t>& which) const;
  IntMatrix select_cols(std::size_t begin, std::size_t end) const;
  IntMatrix select_cols(const std::vector<std::size_t>& which) const;
  IntMatrix transpose() const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);  // row dst += k row src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  /// Replaces rows (a, b) by (s a + t b, u a + v b).
  void combine_rows(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                    const Integer& u, const Integer& v);
  void combine_cols(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                    const Integer& u, const Integer& v);

  IntMatrix& operator+=(const IntMatrix& other);
  IntMatrix& operator-=(const IntMatrix& other);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator-(IntMatrix a);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& k, IntMatrix a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hcat(const IntMatrix& left, const IntMatrix& right);
IntMatrix vcat(const IntMatrix& top, const IntMatrix& bottom);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
/// Bracketed form "[[a, b], [c, d]]" used by the model file format.
std::string to_literal(const IntMatrix& m);

/// Floor division and the matching nonnegative-for-positive-divisor remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

/// Row-style Hermite form: U * M = H with U unimodular, H in echelon form,
/// pivots positive, entries above each pivot reduced into [0, pivot).
struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};
HermiteResult hnf(const IntMatrix& m);

/// Smith form: U * M * V = D, D diagonal with d_1 | d_2 | ... | d_r > 0
/// followed by zeros.
struct SmithResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};
SmithResult snf(const IntMatrix& m);

/// Some x with A x = b, or nothing if b is not in the integer column span.
std::optional<IntMatrix> solve_linear(const IntMatrix& a, const IntMatrix& b);

/// Lattice basis (as columns) of { x : A x = 0 }.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis (as columns) of the lattice spanned by the columns of m.
IntMatrix column_lattice_basis(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Inverse of a unimodular matrix; throws InputError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace mvkit
