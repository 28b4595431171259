#pragma once

// Linear Dirac structures on V (+) V*.
//
// Coordinates: a generalized vector X + xi in V (+) V* with dim V = n is the
// length-2n column (X_1..X_n, xi_1..xi_n) where xi_k = xi(e_k).
//
// Sign conventions used throughout the library:
//   * A 2-form Omega on a space with basis b_i is stored as the skew matrix
//     Omega_ij = Omega(b_i, b_j).
//   * Interior product: (X _| Omega)(Y) = Omega(X, Y). Hence the flat map
//     Omega_flat : X -> X _| Omega has matrix Omega^T (= -Omega).
//   * A bivector presentation (R*, pi) is the set
//     { X + xi : xi in R*, pi(xi, eta) = -eta(X) for all eta in R* }.

#include <cstddef>
#include <string>
#include <utility>

#include "diracred/exactlin.hpp"

namespace diracred {

/// V (+) V* with dim V = n and the pairing <X+xi, Y+eta> = (xi(Y) + eta(X)) / 2.
struct PairingSpace {
  std::size_t n = 0;

  std::size_t total_dim() const { return 2 * n; }

  template <ExactField F = Rational>
  Matrix<F> gram() const {
    Matrix<F> q(2 * n, 2 * n);
    F half = F(Rational(1, 2));
    for (std::size_t i = 0; i < n; ++i) {
      q(i, n + i) = half;
      q(n + i, i) = half;
    }
    return q;
  }

  /// rho : V (+) V* -> V
  template <ExactField F = Rational>
  Matrix<F> anchor() const {
    Matrix<F> p(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = F(1);
    return p;
  }
  /// rho* : V (+) V* -> V*
  template <ExactField F = Rational>
  Matrix<F> coanchor() const {
    Matrix<F> p(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) p(i, n + i) = F(1);
    return p;
  }
  /// V (+) 0 as a subspace of V (+) V*.
  template <ExactField F = Rational>
  Subspace<F> tangent_part(const Subspace<F>& w) const {
    require(w.ambient_dim() == n, "tangent_part: dimension mismatch");
    return direct_sum(w, Subspace<F>::zero(n));
  }
  /// 0 (+) V* as a subspace of V (+) V*.
  template <ExactField F = Rational>
  Subspace<F> cotangent_part(const Subspace<F>& w) const {
    require(w.ambient_dim() == n, "cotangent_part: dimension mismatch");
    return direct_sum(Subspace<F>::zero(n), w);
  }
};

template <ExactField F>
struct GeneralizedVector {
  Vec<F> x;
  Vec<F> xi;

  std::size_t n() const { return x.size(); }

  Vec<F> coords() const {
    Vec<F> c = x;
    c.insert(c.end(), xi.begin(), xi.end());
    return c;
  }
  static GeneralizedVector from_coords(const Vec<F>& c) {
    require(c.size() % 2 == 0, "generalized vector must have even length");
    const std::size_t n = c.size() / 2;
    return {Vec<F>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)),
            Vec<F>(c.begin() + static_cast<std::ptrdiff_t>(n), c.end())};
  }
};

template <ExactField F>
F pairing(const GeneralizedVector<F>& v, const GeneralizedVector<F>& w) {
  require(v.x.size() == v.xi.size() && w.x.size() == w.xi.size() && v.n() == w.n(),
          "pairing: dimension mismatch");
  F s = dot(v.xi, w.x) + dot(w.xi, v.x);
  return s * F(Rational(1, 2));
}

/// Pairing of two coordinate vectors of length 2n.
template <ExactField F>
F pairing(const Vec<F>& v, const Vec<F>& w) {
  return pairing(GeneralizedVector<F>::from_coords(v), GeneralizedVector<F>::from_coords(w));
}

/// True iff <u, v> = 0 for all basis pairs.
template <ExactField F>
bool is_isotropic(const Subspace<F>& s) {
  require(s.ambient_dim() % 2 == 0, "is_isotropic: odd ambient dimension");
  const std::size_t n = s.ambient_dim() / 2;
  Matrix<F> g = s.basis() * PairingSpace{n}.gram<F>() * s.basis().transpose();
  return g.is_zero();
}

/// Pairing-orthogonal complement inside V (+) V*.
template <ExactField F>
Subspace<F> pairing_orthogonal(const Subspace<F>& s) {
  require(s.ambient_dim() % 2 == 0, "pairing_orthogonal: odd ambient dimension");
  return orthogonal(s, PairingSpace{s.ambient_dim() / 2}.gram<F>());
}

/// A maximal isotropic subspace of V (+) V*. Validated on construction.
template <ExactField F>
class DiracStructure {
 public:
  explicit DiracStructure(Subspace<F> space) : space_(std::move(space)) {
    require(space_.ambient_dim() % 2 == 0, "Dirac structure: ambient dimension must be even");
    require(space_.dim() == n(), "Dirac structure: dimension " + std::to_string(space_.dim()) +
                                     " is not maximal (expected " + std::to_string(n()) + ")");
    require(is_isotropic(space_), "Dirac structure: subspace is not isotropic");
  }

  static DiracStructure tangent(std::size_t n) {
    return DiracStructure(PairingSpace{n}.tangent_part(Subspace<F>::whole(n)));
  }
  static DiracStructure cotangent(std::size_t n) {
    return DiracStructure(PairingSpace{n}.cotangent_part(Subspace<F>::whole(n)));
  }

  std::size_t n() const { return space_.ambient_dim() / 2; }
  const Subspace<F>& space() const { return space_; }

  /// rho(L) subset of V.
  Subspace<F> range() const { return image(PairingSpace{n()}.anchor<F>(), space_); }
  /// rho*(L) subset of V*.
  Subspace<F> corange() const { return image(PairingSpace{n()}.coanchor<F>(), space_); }

  friend bool operator==(const DiracStructure& a, const DiracStructure& b) { return a.space_ == b.space_; }

 private:
  Subspace<F> space_;
};

using QDirac = DiracStructure<Rational>;
using CDirac = DiracStructure<Complex>;

/// (R, Omega): Omega is skew with respect to the canonical basis of R.
template <ExactField F>
struct FormPresentation {
  Subspace<F> range;
  Matrix<F> omega;
};

/// (R*, pi): pi is skew with respect to the canonical basis of R*.
template <ExactField F>
struct BivectorPresentation {
  Subspace<F> corange;
  Matrix<F> pi;
};

namespace detail {

/// A covector xi in F^n with xi(b_j) = values[j] for the canonical basis b_j of R.
template <ExactField F>
Vec<F> covector_with_values(const Subspace<F>& r, const Vec<F>& values) {
  Vec<F> xi(r.ambient_dim(), F(0));
  // RREF rows have a 1 in their own pivot and 0 in every other pivot column.
  for (std::size_t j = 0; j < r.dim(); ++j) xi[r.pivots()[j]] = values[j];
  return xi;
}

template <ExactField F>
void require_form_on(const Subspace<F>& r, const Matrix<F>& form, const char* what) {
  require(form.rows() == r.dim() && form.cols() == r.dim(),
          std::string(what) + ": matrix size does not match subspace dimension");
  require(is_skew(form), std::string(what) + ": matrix is not skew-symmetric");
}

}  // namespace detail

/// { X + xi : X in R, X _| Omega = xi restricted to R }.
template <ExactField F>
DiracStructure<F> from_form(const Subspace<F>& r, const Matrix<F>& omega) {
  detail::require_form_on(r, omega, "from_form");
  const std::size_t n = r.ambient_dim();
  Matrix<F> gens(n, 2 * n);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    Vec<F> xi = detail::covector_with_values(r, omega.row(i));
    for (std::size_t k = 0; k < n; ++k) {
      gens(i, k) = r.basis()(i, k);
      gens(i, n + k) = xi[k];
    }
  }
  Subspace<F> ann = annihilator(r);
  for (std::size_t a = 0; a < ann.dim(); ++a)
    for (std::size_t k = 0; k < n; ++k) gens(r.dim() + a, n + k) = ann.basis()(a, k);
  return DiracStructure<F>(Subspace<F>::span(gens));
}

/// { X + xi : xi in R*, pi(xi, eta) = -eta(X) for all eta in R* }.
template <ExactField F>
DiracStructure<F> from_bivector(const Subspace<F>& rstar, const Matrix<F>& pi) {
  detail::require_form_on(rstar, pi, "from_bivector");
  const std::size_t n = rstar.ambient_dim();
  Matrix<F> gens(n, 2 * n);
  for (std::size_t i = 0; i < rstar.dim(); ++i) {
    Vec<F> x = detail::covector_with_values(rstar, Vec<F>((-pi).row(i)));
    for (std::size_t k = 0; k < n; ++k) {
      gens(i, k) = x[k];
      gens(i, n + k) = rstar.basis()(i, k);
    }
  }
  Subspace<F> ann = annihilator(rstar);
  for (std::size_t a = 0; a < ann.dim(); ++a)
    for (std::size_t k = 0; k < n; ++k) gens(rstar.dim() + a, k) = ann.basis()(a, k);
  return DiracStructure<F>(Subspace<F>::span(gens));
}

template <ExactField F>
FormPresentation<F> to_form(const DiracStructure<F>& l) {
  const std::size_t n = l.n();
  const PairingSpace sp{n};
  Subspace<F> r = l.range();
  // Elements of L over X = 0 must annihilate rho(L); otherwise Omega is ill-defined.
  Subspace<F> vertical = intersect(l.space(), sp.cotangent_part(Subspace<F>::whole(n)));
  Subspace<F> r0 = annihilator(r);
  for (const auto& v : vertical.basis_vectors()) {
    ensure(r0.contains(GeneralizedVector<F>::from_coords(v).xi),
           "to_form: Omega is not well defined (corrupt Dirac structure)");
  }
  Matrix<F> lx = l.space().basis() * sp.anchor<F>().transpose();  // rows: rho of basis
  Matrix<F> omega(r.dim(), r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i) {
    auto c = solve(lx.transpose(), r.basis().row(i));
    ensure(c.has_value(), "to_form: range vector has no lift");
    Vec<F> elem = l.space().basis().transpose().apply(*c);
    Vec<F> xi = GeneralizedVector<F>::from_coords(elem).xi;
    for (std::size_t j = 0; j < r.dim(); ++j) omega(i, j) = dot(xi, r.basis().row(j));
  }
  ensure(is_skew(omega), "to_form: Omega is not skew (corrupt Dirac structure)");
  return {std::move(r), std::move(omega)};
}

template <ExactField F>
BivectorPresentation<F> to_bivector(const DiracStructure<F>& l) {
  const std::size_t n = l.n();
  const PairingSpace sp{n};
  Subspace<F> rs = l.corange();
  Subspace<F> horizontal = intersect(l.space(), sp.tangent_part(Subspace<F>::whole(n)));
  Subspace<F> rs0 = annihilator(rs);
  for (const auto& v : horizontal.basis_vectors()) {
    ensure(rs0.contains(GeneralizedVector<F>::from_coords(v).x),
           "to_bivector: pi is not well defined (corrupt Dirac structure)");
  }
  Matrix<F> lxi = l.space().basis() * sp.coanchor<F>().transpose();
  Matrix<F> pi(rs.dim(), rs.dim());
  for (std::size_t i = 0; i < rs.dim(); ++i) {
    auto c = solve(lxi.transpose(), rs.basis().row(i));
    ensure(c.has_value(), "to_bivector: corange vector has no lift");
    Vec<F> elem = l.space().basis().transpose().apply(*c);
    Vec<F> x = GeneralizedVector<F>::from_coords(elem).x;
    for (std::size_t j = 0; j < rs.dim(); ++j) pi(i, j) = -dot(rs.basis().row(j), x);
  }
  ensure(is_skew(pi), "to_bivector: pi is not skew (corrupt Dirac structure)");
  return {std::move(rs), std::move(pi)};
}

/// Backward image { X + phi^* xi : phi X + xi in L_W } of L_W through phi : V -> W.
/// `phi` is dim W x dim V.
template <ExactField F>
DiracStructure<F> backward(const Matrix<F>& phi, const DiracStructure<F>& lw) {
  require(phi.rows() == lw.n(), "backward: map codomain does not match the Dirac structure");
  const std::size_t n = phi.cols(), m = phi.rows();
  // (X, xi) in V (+) W*  |->  (phi X, xi) in W (+) W*
  Matrix<F> lift(2 * m, n + m);
  lift.set_block(0, 0, phi);
  lift.set_block(m, n, Matrix<F>::identity(m));
  Subspace<F> pairs = preimage(lift, lw.space());
  // (X, xi) |-> (X, phi^T xi)
  Matrix<F> out(2 * n, n + m);
  out.set_block(0, 0, Matrix<F>::identity(n));
  out.set_block(n, n, phi.transpose());
  return DiracStructure<F>(image(out, pairs));
}

/// Forward image { phi X + xi : X + phi^* xi in L_V } of L_V through phi : V -> W.
template <ExactField F>
DiracStructure<F> forward(const Matrix<F>& phi, const DiracStructure<F>& lv) {
  require(phi.cols() == lv.n(), "forward: map domain does not match the Dirac structure");
  const std::size_t n = phi.cols(), m = phi.rows();
  // (X, xi) in V (+) W*  |->  (X, phi^T xi) in V (+) V*
  Matrix<F> lift(2 * n, n + m);
  lift.set_block(0, 0, Matrix<F>::identity(n));
  lift.set_block(n, n, phi.transpose());
  Subspace<F> pairs = preimage(lift, lv.space());
  Matrix<F> out(2 * m, n + m);
  out.set_block(0, 0, phi);
  out.set_block(m, n, Matrix<F>::identity(m));
  return DiracStructure<F>(image(out, pairs));
}

/// Pullback phi^* Omega of a form on the canonical basis of R_W to the canonical basis of
/// R_V subset of phi^{-1}(R_W).
template <ExactField F>
Matrix<F> pullback_form(const Matrix<F>& phi, const Subspace<F>& rv, const FormPresentation<F>& w) {
  Matrix<F> out(rv.dim(), rv.dim());
  std::vector<Vec<F>> coords;
  for (std::size_t i = 0; i < rv.dim(); ++i) {
    Vec<F> img = phi.apply(rv.basis().row(i));
    auto c = solve(w.range.basis().transpose(), img);
    require(c.has_value(), "pullback_form: vector does not map into the form's range");
    coords.push_back(std::move(*c));
  }
  for (std::size_t i = 0; i < rv.dim(); ++i)
    for (std::size_t j = 0; j < rv.dim(); ++j) out(i, j) = dot(coords[i], w.omega.apply(coords[j]));
  return out;
}

}  // namespace diracred
