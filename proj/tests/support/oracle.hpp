#pragma once

// Independent reference computations for tests. Deliberately naive: dense
// Gauss-Jordan over std::vector rows, no reuse of the library's elimination.

#include <cstddef>
#include <vector>

#include "diracred/exactlin.hpp"

namespace oracle {

using diracred::Complex;
using diracred::Rational;

template <class F>
using Rows = std::vector<std::vector<F>>;

template <class F>
bool zero(const F& x) {
  return x == F(0);
}

/// Reduced row echelon form, zero rows dropped.
template <class F>
Rows<F> rref(Rows<F> m, std::size_t cols) {
  std::size_t lead = 0;
  const std::size_t rows = m.size();
  for (std::size_t r = 0; r < rows && lead < cols; ++lead) {
    std::size_t i = r;
    while (i < rows && zero(m[i][lead])) ++i;
    if (i == rows) continue;
    std::swap(m[i], m[r]);
    F inv = F(1) / m[r][lead];
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || zero(m[k][lead])) continue;
      F f = m[k][lead];
      for (std::size_t c = 0; c < cols; ++c) m[k][c] = m[k][c] - f * m[r][c];
    }
    ++r;
  }
  Rows<F> out;
  for (auto& row : m) {
    bool nz = false;
    for (auto& x : row) nz = nz || !zero(x);
    if (nz) out.push_back(row);
  }
  return out;
}

template <class F>
std::size_t rank(const Rows<F>& m, std::size_t cols) {
  return rref(m, cols).size();
}

/// Basis of {x : M x = 0}.
template <class F>
Rows<F> kernel(const Rows<F>& m, std::size_t cols) {
  Rows<F> e = rref(m, cols);
  std::vector<long> pivot_of_col(cols, -1);
  for (std::size_t r = 0; r < e.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (!zero(e[r][c])) {
        pivot_of_col[c] = static_cast<long>(r);
        break;
      }
  Rows<F> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = F(0) - e[pivot_of_col[c]][free];
    out.push_back(v);
  }
  return out;
}

template <class F>
Rows<F> transpose(const Rows<F>& m, std::size_t cols) {
  Rows<F> t(cols, std::vector<F>(m.size(), F(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

/// span(A) cap span(B): solve a.A = b.B for (a, b), map back through A.
template <class F>
Rows<F> intersect(const Rows<F>& a, const Rows<F>& b, std::size_t n) {
  if (a.empty() || b.empty()) return {};
  // unknowns (a_1..a_p, b_1..b_q); equations per coordinate.
  const std::size_t p = a.size(), q = b.size();
  Rows<F> sys(n, std::vector<F>(p + q, F(0)));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < p; ++i) sys[c][i] = a[i][c];
    for (std::size_t j = 0; j < q; ++j) sys[c][p + j] = F(0) - b[j][c];
  }
  Rows<F> sols = kernel(sys, p + q);
  Rows<F> gens;
  for (const auto& s : sols) {
    std::vector<F> v(n, F(0));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t c = 0; c < n; ++c) v[c] = v[c] + s[i] * a[i][c];
    gens.push_back(v);
  }
  return rref(gens, n);
}

template <class F>
Rows<F> sum(Rows<F> a, const Rows<F>& b, std::size_t n) {
  a.insert(a.end(), b.begin(), b.end());
  return rref(a, n);
}

template <class F>
Rows<F> rows_of(const diracred::Matrix<F>& m) {
  Rows<F> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

template <class F>
Rows<F> rows_of(const diracred::Subspace<F>& s) {
  return rows_of(s.basis());
}

template <class F>
diracred::Matrix<F> matrix_of(const Rows<F>& r, std::size_t cols) {
  return diracred::Matrix<F>::from_rows(r, cols);
}

/// Apply a matrix to each row vector: rows of (M v).
template <class F>
Rows<F> map_rows(const diracred::Matrix<F>& m, const Rows<F>& rows) {
  Rows<F> out;
  for (const auto& v : rows) {
    std::vector<F> w(m.rows(), F(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) w[i] = w[i] + m(i, j) * v[j];
    out.push_back(w);
  }
  return rref(out, m.rows());
}

template <class F>
bool same_span(const Rows<F>& a, const Rows<F>& b, std::size_t n) {
  return rref(a, n) == rref(b, n);
}

/// e_i in dimension n.
template <class F = Rational>
std::vector<F> unit(std::size_t n, std::size_t i, F value = F(1)) {
  std::vector<F> v(n, F(0));
  v[i] = value;
  return v;
}

inline Rows<Complex> complexify(const Rows<Rational>& r) {
  Rows<Complex> out;
  for (const auto& row : r) {
    std::vector<Complex> v;
    for (const auto& x : row) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

}  // namespace oracle
