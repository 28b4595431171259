#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diracred/errors.hpp"
#include "diracred/exactlin/matrix.hpp"

namespace diracred {

/// A linear subspace of F^n held by its reduced row echelon basis.
///
/// The canonical form is unique per subspace, so `==` is structural equality
/// of basis rows. Values are immutable once built.
template <ExactField F>
class Subspace {
 public:
  Subspace() = default;

  /// Span of the rows of `generators`; the ambient dimension is its column count.
  static Subspace span(const Matrix<F>& generators) {
    Subspace s;
    s.ambient_ = generators.cols();
    RowEchelon<F> e = row_reduce(generators);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(const std::vector<Vec<F>>& generators, std::size_t ambient) {
    return span(Matrix<F>::from_rows(generators, ambient));
  }
  static Subspace zero(std::size_t n) { return span(Matrix<F>(0, n)); }
  static Subspace whole(std::size_t n) { return span(Matrix<F>::identity(n)); }
  /// span{e_i : i in indices}
  static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& indices) {
    Matrix<F> m(indices.size(), n);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      require(indices[k] < n, "coordinate index out of range");
      m(k, indices[k]) = F(1);
    }
    return span(m);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  bool is_zero() const { return pivots_.empty(); }
  bool is_whole() const { return dim() == ambient_; }
  const Matrix<F>& basis() const { return basis_; }
  std::vector<Vec<F>> basis_vectors() const { return basis_.row_list(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec<F>& v) const {
    require(v.size() == ambient_, "vector/subspace dimension mismatch");
    Vec<F> r = v;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const F c = r[pivots_[k]];
      if (diracred::is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        if (!diracred::is_zero(basis_(k, j))) r[j] -= c * basis_(k, j);
      }
    }
    return is_zero_vector(r);
  }
  /// Subset test.
  bool contains(const Subspace& other) const {
    require(other.ambient_ == ambient_, "subspace dimension mismatch");
    for (std::size_t k = 0; k < other.dim(); ++k)
      if (!contains(other.basis_.row(k))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

using QSubspace = Subspace<Rational>;
using CSubspace = Subspace<Complex>;

template <ExactField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  require(a.ambient_dim() == b.ambient_dim(), "sum: ambient dimension mismatch");
  Matrix<F> g(a.dim() + b.dim(), a.ambient_dim());
  g.set_block(0, 0, a.basis());
  g.set_block(a.dim(), 0, b.basis());
  return Subspace<F>::span(g);
}

/// W^0 = {xi : xi(w) = 0 for all w in W}, in dual coordinates.
template <ExactField F>
Subspace<F> annihilator(const Subspace<F>& w) {
  if (w.is_zero()) return Subspace<F>::whole(w.ambient_dim());
  return Subspace<F>::span(kernel(w.basis()));
}

template <ExactField F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  require(a.ambient_dim() == b.ambient_dim(), "intersect: ambient dimension mismatch");
  if (a.is_zero() || b.is_zero()) return Subspace<F>::zero(a.ambient_dim());
  return annihilator(sum(annihilator(a), annihilator(b)));
}

/// M(S) for M : F^n -> F^m.
template <ExactField F>
Subspace<F> image(const Matrix<F>& m, const Subspace<F>& s) {
  require(m.cols() == s.ambient_dim(), "image: dimension mismatch");
  if (s.is_zero()) return Subspace<F>::zero(m.rows());
  return Subspace<F>::span(s.basis() * m.transpose());
}

/// Column space of M.
template <ExactField F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::span(m.transpose());
}

/// M^{-1}(S) = {x : M x in S}.
template <ExactField F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& s) {
  require(m.rows() == s.ambient_dim(), "preimage: dimension mismatch");
  Subspace<F> ann = annihilator(s);
  if (ann.is_zero()) return Subspace<F>::whole(m.cols());
  Matrix<F> constraints = ann.basis() * m;
  if (constraints.is_zero()) return Subspace<F>::whole(m.cols());
  return Subspace<F>::span(kernel(constraints));
}

/// Kernel of M as a subspace of its domain.
template <ExactField F>
Subspace<F> null_space(const Matrix<F>& m) {
  if (m.rows() == 0) return Subspace<F>::whole(m.cols());
  return Subspace<F>::span(kernel(m));
}

/// {v : s^T G v = 0 for all s in S} for a bilinear form with Gram matrix G.
template <ExactField F>
Subspace<F> orthogonal(const Subspace<F>& s, const Matrix<F>& gram) {
  require(gram.square() && gram.rows() == s.ambient_dim(), "orthogonal: Gram dimension mismatch");
  if (s.is_zero()) return Subspace<F>::whole(s.ambient_dim());
  return null_space(s.basis() * gram);
}

/// Direct sum S1 (+) S2 in F^{n1+n2}.
template <ExactField F>
Subspace<F> direct_sum(const Subspace<F>& a, const Subspace<F>& b) {
  const std::size_t n1 = a.ambient_dim(), n2 = b.ambient_dim();
  Matrix<F> g(a.dim() + b.dim(), n1 + n2);
  g.set_block(0, 0, a.basis());
  g.set_block(a.dim(), n1, b.basis());
  return Subspace<F>::span(g);
}

inline CSubspace complexify(const QSubspace& a) {
  // RREF over Q is already RREF over Q(i).
  return CSubspace::span(complexify(a.basis()));
}

inline CSubspace conjugate(const CSubspace& a) { return CSubspace::span(conjugate(a.basis())); }

/// True iff S is the complexification of a rational subspace.
inline bool is_real(const CSubspace& a) {
  const auto& b = a.basis();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!b(i, j).is_real()) return false;
  return true;
}

/// The rational subspace whose complexification is `a`; throws unless is_real(a).
inline QSubspace real_form(const CSubspace& a) {
  if (!is_real(a)) throw InvalidInput("subspace is not conjugation invariant");
  return QSubspace::span(real_matrix(a.basis()));
}

template <ExactField F>
std::string to_string(const Subspace<F>& s) {
  std::string out = "span{";
  for (std::size_t k = 0; k < s.dim(); ++k) {
    if (k) out += ", ";
    out += to_string(s.basis().row(k));
  }
  return out + "}";
}

}  // namespace diracred
