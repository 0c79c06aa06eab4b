#include "mvkit/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace mvkit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::column(const std::vector<Integer>& entries) {
  IntMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

IntMatrix IntMatrix::unit_column(std::size_t n, std::size_t k) {
  IntMatrix m(n, 1);
  m(k, 0) = 1;
  return m;
}

IntMatrix IntMatrix::col(std::size_t j) const {
  IntMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

void IntMatrix::set_col(std::size_t j, const IntMatrix& column) {
  if (column.rows() != rows_ || column.cols() != 1) throw InputError("set_col: shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = column(i, 0);
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& which) const {
  IntMatrix m(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(which[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& which) const {
  IntMatrix m(rows_, which.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < which.size(); ++j) m(i, j) = (*this)(i, which[j]);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return sgn(v) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::combine_rows(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                             const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < cols_; ++j) {
    Integer x = (*this)(a, j);
    Integer y = (*this)(b, j);
    (*this)(a, j) = s * x + t * y;
    (*this)(b, j) = u * x + v * y;
  }
}

void IntMatrix::combine_cols(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                             const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer x = (*this)(i, a);
    Integer y = (*this)(i, b);
    (*this)(i, a) = s * x + t * y;
    (*this)(i, b) = u * x + v * y;
  }
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InputError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

IntMatrix operator-(IntMatrix a) {
  for (auto& v : a.data_) v = -v;
  return a;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    std::ostringstream msg;
    msg << "matrix product: " << a.rows_ << "x" << a.cols_ << " times " << b.rows_ << "x"
        << b.cols_;
    throw InputError(msg.str());
  }
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator*(const Integer& k, IntMatrix a) {
  for (auto& v : a.data_) v *= k;
  return a;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix hcat(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows() != right.rows()) throw InputError("hcat: row count mismatch");
  IntMatrix m(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) m(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) m(i, left.cols() + j) = right(i, j);
  }
  return m;
}

IntMatrix vcat(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw InputError("vcat: column count mismatch");
  IntMatrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t j = 0; j < top.cols(); ++j) {
    for (std::size_t i = 0; i < top.rows(); ++i) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i) m(top.rows() + i, j) = bottom(i, j);
  }
  return m;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

std::string to_literal(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

struct Bezout {
  Integer g, s, t;  // s a + t b = g >= 0
};

Bezout bezout(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

HermiteResult hnf(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = res.H;
  IntMatrix& u = res.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (sgn(h(i, c)) == 0) continue;
      Integer a = h(r, c);
      Integer b = h(i, c);
      Bezout e = bezout(a, b);
      Integer bg = b / e.g;
      Integer ag = a / e.g;
      h.combine_rows(r, i, e.s, e.t, -bg, ag);
      u.combine_rows(r, i, e.s, e.t, -bg, ag);
    }
    if (sgn(h(r, c)) == 0) continue;
    if (sgn(h(r, c)) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

std::vector<Integer> SmithResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

bool off_diagonal_zero(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && sgn(a(i, j)) != 0) return false;
  return true;
}

}  // namespace

// Alternating row and column Hermite forms until the matrix is diagonal. The
// reduced Hermite steps keep entries small where plain elimination blows up.
SmithResult snf(const IntMatrix& m) {
  SmithResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& a = res.D;
  while (true) {
    HermiteResult rows = hnf(a);
    a = rows.H;
    res.U = rows.U * res.U;
    if (off_diagonal_zero(a)) break;
    HermiteResult cols = hnf(a.transpose());
    a = cols.H.transpose();
    res.V = res.V * cols.U.transpose();
    if (off_diagonal_zero(a)) break;
  }
  const std::size_t n = std::min(a.rows(), a.cols());
  while (res.rank < n && sgn(a(res.rank, res.rank)) != 0) ++res.rank;

  for (std::size_t i = 0; i < res.rank; ++i)
    for (std::size_t j = i + 1; j < res.rank; ++j) {
      const Integer di = a(i, i), dj = a(j, j);
      if (sgn(dj % di) == 0) continue;
      Bezout e = bezout(di, dj);
      const Integer ig = di / e.g, jg = dj / e.g;
      res.U.combine_rows(i, j, e.s, e.t, -jg, ig);
      res.V.combine_cols(i, j, 1, 1, -e.t * jg, e.s * ig);
      a(i, i) = e.g;
      a(j, j) = di * jg;
    }
  return res;
}

std::optional<IntMatrix> solve_linear(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || b.cols() != 1) throw InputError("solve_linear: dimension mismatch");
  SmithResult s = snf(a);
  IntMatrix c = s.U * b;
  IntMatrix y(a.cols(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      const Integer& d = s.D(i, i);
      if (sgn(c(i, 0) % d) != 0) return std::nullopt;
      y(i, 0) = c(i, 0) / d;
    } else if (sgn(c(i, 0)) != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithResult s = snf(a);
  return s.V.select_cols(s.rank, a.cols());
}

IntMatrix column_lattice_basis(const IntMatrix& m) {
  HermiteResult h = hnf(m.transpose());
  return h.H.select_rows(0, h.rank).transpose();
}

std::size_t rank(const IntMatrix& m) { return hnf(m).rank; }

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  return m.is_square() && abs(determinant(m)) == 1;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("unimodular_inverse: matrix is not square");
  HermiteResult h = hnf(m);
  if (!(h.H == IntMatrix::identity(m.rows())))
    throw InputError("unimodular_inverse: matrix is not unimodular");
  return h.U;
}

}  // namespace mvkit
