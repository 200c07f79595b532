#ifndef FLAGGEOM_MATRIX_HPP
#define FLAGGEOM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace flaggeom {

template <class F>
using Vec = std::vector<typename F::value_type>;

// Dense row-major matrix over a field. Matrices act on column vectors.
template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }
  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vec<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  // Inverse of vec(): reshape a row-major vector.
  static Matrix from_vec(const F& field, std::size_t rows, std::size_t cols, const Vec<F>& v) {
    if (v.size() != rows * cols) throw std::invalid_argument("vector length does not match shape");
    Matrix m(field, rows, cols);
    m.data_ = v;
    return m;
  }
  // Column vector as an n x 1 matrix.
  static Matrix column(const F& field, const Vec<F>& v) { return from_vec(field, v.size(), 1, v); }
  // Unit matrix E_ij.
  static Matrix unit(const F& field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix m(field, rows, cols);
    m(i, j) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const Vec<F>& vec() const { return data_; }
  Vec<F> row(std::size_t i) const {
    return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Vec<F> col(std::size_t j) const {
    Vec<F> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& a : data_)
      if (!field_.is_zero(a)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o, "+");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(data_[k], o.data_[k]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o, "-");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(data_[k], o.data_[k]);
    return r;
  }
  Matrix operator-() const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.neg(data_[k]);
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw std::invalid_argument("shape mismatch in product: " + shape() + " * " + o.shape());
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
      }
    return r;
  }
  Matrix scaled(const value_type& s) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(s, data_[k]);
    return r;
  }
  Vec<F> apply(const Vec<F>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch in apply");
    Vec<F> r(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] = field_.add(r[i], field_.mul((*this)(i, j), v[j]));
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("shape mismatch in ") + op + ": " + shape() + " vs " +
                                  o.shape());
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  Vec<F> data_;
};

template <class F>
struct Rref {
  Matrix<F> matrix;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination. Zero rows stay at the bottom.
template <class F>
Rref<F> rref(Matrix<F> m) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && k.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    auto s = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(s, m(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix " + m.shape());
  std::size_t n = m.rows();
  Matrix<F> aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(m.field(), n));
  auto red = rref(std::move(aug));
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1)
    throw std::domain_error("matrix is singular");
  return red.matrix.block(0, n, n, n);
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
  return m.is_square() && rank(m) == m.rows();
}

// Horizontal and vertical concatenation.
template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix<F> r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}
template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

template <class F>
Matrix<F> power(const Matrix<F>& m, unsigned e) {
  Matrix<F> r = Matrix<F>::identity(m.field(), m.rows());
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

}  // namespace flaggeom

#endif  // FLAGGEOM_MATRIX_HPP
