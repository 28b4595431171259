#pragma once

// Linear generalized complex structures J on V (+) V*.
//
// J acts on coordinate columns (X; xi) and is stored in block form
//   J = [[N, pi_sharp], [sigma_flat, -N^T]].

#include <cstddef>
#include <string>
#include <utility>

#include "diracred/dirac.hpp"

namespace diracred {

/// The flat map X -> X _| omega of a 2-form stored as omega_ij = omega(e_i, e_j).
inline QMatrix flat(const QMatrix& form) { return form.transpose(); }

/// Inverse of `flat`: the 2-form whose flat map is `map`.
inline QMatrix form_of_flat(const QMatrix& map) { return map.transpose(); }

class GCStructure {
 public:
  GCStructure() = default;

  /// Validates J^2 = -I and J^T Q J = Q exactly.
  explicit GCStructure(QMatrix j) : j_(std::move(j)) {
    require(j_.square() && j_.rows() % 2 == 0, "generalized complex structure must be 2n x 2n");
    const std::size_t d = j_.rows();
    require(j_ * j_ == -QMatrix::identity(d), "J^2 != -I");
    QMatrix q = PairingSpace{n()}.gram();
    require(j_.transpose() * q * j_ == q, "J is not orthogonal for the pairing");
  }

  std::size_t n() const { return j_.rows() / 2; }
  const QMatrix& matrix() const { return j_; }

  Vec<Rational> apply(const Vec<Rational>& v) const { return j_.apply(v); }
  QSubspace apply(const QSubspace& s) const { return image(j_, s); }
  CSubspace apply(const CSubspace& s) const { return image(complexify(j_), s); }

  friend bool operator==(const GCStructure& a, const GCStructure& b) { return a.j_ == b.j_; }

 private:
  QMatrix j_ = QMatrix(0, 0);
};

struct EigenPair {
  CSubspace plus;   ///< +i eigenspace
  CSubspace minus;  ///< -i eigenspace
};

struct BlockDecomposition {
  QMatrix n;           ///< endomorphism block V -> V
  QMatrix pi_sharp;    ///< bivector block V* -> V
  QMatrix sigma_flat;  ///< 2-form block V -> V*

  /// sigma as a 2-form (sigma_ij = sigma(e_i, e_j)).
  QMatrix sigma() const { return form_of_flat(sigma_flat); }

  QMatrix reassemble() const { return block2x2(n, pi_sharp, sigma_flat, QMatrix(-n.transpose())); }
};

/// J = [[j, 0], [0, -j^T]] for a complex structure j on V.
inline GCStructure from_complex(const QMatrix& j) {
  require(j.square(), "from_complex: j must be square");
  const std::size_t n = j.rows();
  require(j * j == -QMatrix::identity(n), "from_complex: j^2 != -I");
  return GCStructure(block2x2(j, QMatrix(n, n), QMatrix(n, n), QMatrix(-j.transpose())));
}

/// J = [[0, -omega_flat^{-1}], [omega_flat, 0]] for a nondegenerate 2-form omega.
inline GCStructure from_symplectic(const QMatrix& omega) {
  require(omega.square(), "from_symplectic: omega must be square");
  require(is_skew(omega), "from_symplectic: omega is not skew");
  require(is_invertible(omega), "from_symplectic: omega is degenerate");
  const std::size_t n = omega.rows();
  QMatrix w = flat(omega);
  return GCStructure(block2x2(QMatrix(n, n), QMatrix(-inverse(w)), w, QMatrix(n, n)));
}

/// [[I, 0], [B_flat, I]].
inline QMatrix shear(const QMatrix& b) {
  require(is_skew(b), "B-field is not skew");
  const std::size_t n = b.rows();
  return block2x2(QMatrix::identity(n), QMatrix(n, n), flat(b), QMatrix::identity(n));
}

/// Conjugation of J by the shear of the 2-form B.
inline GCStructure b_transform(const GCStructure& j, const QMatrix& b) {
  require(b.rows() == j.n(), "b_transform: B has wrong size");
  return GCStructure(shear(b) * j.matrix() * shear(-b));
}

/// E_+/- = { v -/+ i J v }.
inline EigenPair eigenbundles(const GCStructure& j) {
  const std::size_t d = 2 * j.n();
  CMatrix cj = complexify(j.matrix()) * Complex::i();
  CMatrix id = CMatrix::identity(d);
  // Generators are the columns of I -/+ iJ.
  CSubspace plus = image(CMatrix(id - cj));
  CSubspace minus = image(CMatrix(id + cj));
  return {std::move(plus), std::move(minus)};
}

/// The unique real J with J = i on E_+ and J = -i on conj(E_+).
inline GCStructure from_eigenpair(const CSubspace& plus) {
  require(plus.ambient_dim() % 2 == 0, "from_eigenpair: ambient dimension must be even");
  const std::size_t n = plus.ambient_dim() / 2;
  if (plus.dim() != n) throw InvalidInput("from_eigenpair: E+ is not maximal (dimension " + std::to_string(plus.dim()) + ")");
  if (!is_isotropic(plus)) throw InvalidInput("from_eigenpair: E+ is not isotropic");
  CSubspace minus = conjugate(plus);
  if (!intersect(plus, minus).is_zero()) throw InvalidInput("from_eigenpair: E+ meets its conjugate (not transverse)");
  CMatrix p(2 * n, 2 * n), d(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < 2 * n; ++r) {
      p(r, k) = plus.basis()(k, r);
      p(r, n + k) = minus.basis()(k, r);
    }
    d(k, k) = Complex::i();
    d(n + k, n + k) = -Complex::i();
  }
  CMatrix cj = p * d * inverse(p);
  QMatrix real;
  try {
    real = real_matrix(cj);
  } catch (const InvalidInput&) {
    throw InternalError("from_eigenpair: reconstructed J is not real");
  }
  return GCStructure(std::move(real));
}

inline BlockDecomposition block_decompose(const GCStructure& j) {
  const std::size_t n = j.n();
  const QMatrix& m = j.matrix();
  BlockDecomposition b{m.block(0, 0, n, n), m.block(0, n, n, n), m.block(n, 0, n, n)};
  ensure(m.block(n, n, n, n) == -b.n.transpose(), "block_decompose: lower-right block is not -N^T");
  ensure(is_skew(b.pi_sharp) && is_skew(b.sigma_flat), "block_decompose: off-diagonal blocks not skew");
  ensure(b.n * b.n + b.pi_sharp * b.sigma_flat == -QMatrix::identity(n), "block_decompose: N^2 + pi sigma != -I");
  return b;
}

// Integrability (the Courant-Nijenhuis condition) is a differential statement and has no
// pointwise meaning; see chart::nijenhuis_defect.

}  // namespace diracred
