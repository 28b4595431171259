#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "diracred/errors.hpp"
#include "diracred/exactlin/scalar.hpp"

namespace diracred {

template <ExactField F>
using Vec = std::vector<F>;

/// Dense row-major matrix over Q or Q(i). Vectors are columns when a matrix acts on them.
template <ExactField F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  Matrix(std::initializer_list<std::initializer_list<F>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      require(r.size() == cols_, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require(cols[j].size() == rows, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vec<F> col(std::size_t c) const {
    Vec<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  std::vector<Vec<F>> row_list() const {
    std::vector<Vec<F>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return diracred::is_zero(x); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    require(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Vec<F> apply(const Vec<F>& v) const {
    require(v.size() == cols_, "matrix-vector dimension mismatch");
    Vec<F> out(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      F acc(0);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!diracred::is_zero((*this)(i, j)) && !diracred::is_zero(v[j])) acc += (*this)(i, j) * v[j];
      }
      out[i] = std::move(acc);
    }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const F& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
  friend Matrix operator*(const F& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (diracred::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!diracred::is_zero(b(k, j))) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<Complex>;

/// [A B] side by side.
template <ExactField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  require(a.rows() == b.rows(), "hstack row mismatch");
  Matrix<F> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// [A; B] stacked.
template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  require(a.cols() == b.cols(), "vstack column mismatch");
  Matrix<F> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

/// 2x2 block matrix [[A, B], [C, D]].
template <ExactField F>
Matrix<F> block2x2(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

template <ExactField F>
bool is_skew(const Matrix<F>& m) {
  return m.square() && m == -m.transpose();
}

template <ExactField F>
bool is_symmetric(const Matrix<F>& m) {
  return m.square() && m == m.transpose();
}

/// Reduced row echelon form: nonzero rows only, pivots normalized to 1, leftmost-column pivoting.
template <ExactField F>
struct RowEchelon {
  Matrix<F> rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

template <ExactField F>
RowEchelon<F> row_reduce(Matrix<F> m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && is_zero(m(p, c))) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < C; ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return RowEchelon<F>{m.block(0, 0, r, C), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).rank();
}

/// Basis of {x : M x = 0}, returned as rows.
template <ExactField F>
Matrix<F> kernel(const Matrix<F>& m) {
  RowEchelon<F> e = row_reduce(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(C, F(0));
    v[free] = F(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rows(k, free);
    basis.push_back(std::move(v));
  }
  return Matrix<F>::from_rows(basis, C);
}

/// A particular solution of A x = b (free variables set to zero), if one exists.
template <ExactField F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
  require(a.rows() == b.size(), "solve: dimension mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  RowEchelon<F> e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<F> x(a.cols(), F(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.rows(k, a.cols());
  return x;
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
  require(m.square(), "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RowEchelon<F> e = row_reduce(hstack(m, Matrix<F>::identity(n)));
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw InvalidInput("matrix is singular");
  return e.rows.block(0, n, n, n);
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
  return m.square() && rank(m) == m.rows();
}

/// Leading principal minors via fraction-exact elimination; all > 0 iff positive definite (Sylvester).
inline bool is_positive_definite(const QMatrix& m) {
  if (!is_symmetric(m)) return false;
  QMatrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) <= 0) return false;  // ratio of consecutive leading minors
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

inline CMatrix complexify(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex(m(i, j));
  return c;
}

inline CMatrix conjugate(const CMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conj();
  return c;
}

/// Real matrix from a complex one whose entries are all real; throws otherwise.
inline QMatrix real_matrix(const CMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_real()) throw InvalidInput("matrix has non-real entries");
      r(i, j) = m(i, j).re();
    }
  return r;
}

inline Vec<Complex> complexify(const Vec<Rational>& v) {
  Vec<Complex> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

template <ExactField F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  require(a.size() == b.size(), "dot product dimension mismatch");
  F acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <ExactField F>
bool is_zero_vector(const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

template <ExactField F>
std::string to_string(const Vec<F>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

template <ExactField F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
  }
  return os;
}

}  // namespace diracred
