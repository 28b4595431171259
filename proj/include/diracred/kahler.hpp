#pragma once

// Generalized Kahler pairs (J1, J2), the (g, b, J+, J-) description, and
// reduction of such pairs along F <= W0 <= V.
//
// omega_+/- is the 2-form with matrix +/- g J_+/- (omega(X, Y) = +/- g(X, J Y)).
// With the interior-product convention of dirac.hpp this is the sign for which
// <J1 J2 u, u> > 0.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "diracred/reduction.hpp"

namespace diracred {

struct PositivityResult {
  bool positive = true;
  std::optional<Vec<Rational>> witness;  ///< u with u^T G u <= 0
};

/// Symmetric LDL^T without pivoting; stops at the first non-positive pivot d_k and
/// returns u = L^{-T} e_k, for which u^T G u = d_k.
inline PositivityResult positivity(const QMatrix& g) {
  require(g.square() && is_symmetric(g), "positivity: matrix must be symmetric");
  const std::size_t n = g.rows();
  QMatrix a = g;
  QMatrix l = QMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) <= 0) {
      // Solve L^T u = e_k by back substitution.
      Vec<Rational> u(n, Rational(0));
      u[k] = 1;
      for (std::size_t i = k; i-- > 0;) {
        Rational s(0);
        for (std::size_t j = i + 1; j <= k; ++j) s += l(j, i) * u[j];
        u[i] = -s;
      }
      return {false, std::move(u)};
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a(i, k) / a(k, k);
      l(i, k) = f;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return {};
}

struct GKDiagnostics {
  bool commute = false;
  bool positive = false;
  std::string failed;                    ///< "" | "commutation" | "positivity"
  std::optional<Vec<Rational>> witness;  ///< in V (+) V* coordinates
  bool ok() const { return commute && positive; }
};

/// Gram matrix of (u, v) -> <J1 J2 u, v>.
inline QMatrix gk_gram(const GCStructure& j1, const GCStructure& j2) {
  return (j1.matrix() * j2.matrix()).transpose() * PairingSpace{j1.n()}.gram();
}

inline GKDiagnostics is_generalized_kahler(const GCStructure& j1, const GCStructure& j2) {
  require(j1.n() == j2.n(), "is_generalized_kahler: dimension mismatch");
  GKDiagnostics d;
  QMatrix comm = j1.matrix() * j2.matrix() - j2.matrix() * j1.matrix();
  d.commute = comm.is_zero();
  if (!d.commute) {
    d.failed = "commutation";
    for (std::size_t c = 0; c < comm.cols(); ++c) {
      if (is_zero_vector(comm.col(c))) continue;
      Vec<Rational> e(comm.cols(), Rational(0));
      e[c] = 1;
      d.witness = std::move(e);
      break;
    }
    return d;
  }
  PositivityResult p = positivity(gk_gram(j1, j2));
  d.positive = p.positive;
  if (!d.positive) {
    d.failed = "positivity";
    d.witness = std::move(p.witness);
  }
  return d;
}

struct GKPair {
  GCStructure j1;
  GCStructure j2;

  GKPair(GCStructure a, GCStructure b) : j1(std::move(a)), j2(std::move(b)) {
    GKDiagnostics d = is_generalized_kahler(j1, j2);
    if (!d.ok()) throw InvalidInput("not a generalized Kahler pair: " + d.failed + " fails");
  }

  std::size_t n() const { return j1.n(); }

  /// Equality as unordered pairs.
  bool same_as(const GCStructure& a, const GCStructure& b) const {
    return (j1 == a && j2 == b) || (j1 == b && j2 == a);
  }
};

struct GualtieriQuadruple {
  QMatrix g, b, j_plus, j_minus;

  GualtieriQuadruple(QMatrix g_, QMatrix b_, QMatrix jp, QMatrix jm)
      : g(std::move(g_)), b(std::move(b_)), j_plus(std::move(jp)), j_minus(std::move(jm)) {
    const std::size_t n = g.rows();
    require(g.square() && b.rows() == n && b.cols() == n && j_plus.rows() == n && j_plus.cols() == n &&
                j_minus.rows() == n && j_minus.cols() == n,
            "quadruple: all four matrices must be n x n");
    require(is_positive_definite(g), "quadruple: g is not symmetric positive definite");
    require(is_skew(b), "quadruple: b is not skew");
    for (const QMatrix* j : {&j_plus, &j_minus}) {
      require(*j * *j == -QMatrix::identity(n), "quadruple: J_+/- must square to -I");
      require(j->transpose() * g * *j == g, "quadruple: J_+/- is not g-orthogonal");
    }
  }

  std::size_t n() const { return g.rows(); }
  /// omega_+ (sign = +1) or omega_- (sign = -1) as a 2-form matrix.
  QMatrix omega(int sign) const {
    QMatrix w = g * (sign > 0 ? j_plus : j_minus);
    return sign > 0 ? w : QMatrix(-w);
  }
};

inline GKPair from_quadruple(const GualtieriQuadruple& q) {
  const std::size_t n = q.n();
  QMatrix wp = flat(q.omega(+1)), wm = flat(q.omega(-1));
  QMatrix wpi = inverse(wp), wmi = inverse(wm);
  const Rational half(1, 2);
  QMatrix sum_block = block2x2(QMatrix(q.j_plus + q.j_minus), QMatrix(-(wpi + wmi)), QMatrix(wp + wm),
                               QMatrix(-(q.j_plus.transpose() + q.j_minus.transpose())));
  QMatrix diff_block = block2x2(QMatrix(q.j_plus - q.j_minus), QMatrix(-(wpi - wmi)), QMatrix(wp - wm),
                                QMatrix(-(q.j_plus.transpose() - q.j_minus.transpose())));
  QMatrix s = shear(q.b), sinv = shear(QMatrix(-q.b));
  GCStructure j1(QMatrix(s * sum_block * sinv * half));
  GCStructure j2(QMatrix(s * diff_block * sinv * half));
  ensure(j1.n() == n, "from_quadruple: size");
  return GKPair(std::move(j1), std::move(j2));
}

struct GKDatum {
  GKPair pair;
  QSubspace w0;
  QSubspace f;

  GKDatum(GKPair p, QSubspace w0_, QSubspace f_) : pair(std::move(p)), w0(std::move(w0_)), f(std::move(f_)) {
    require(w0.ambient_dim() == pair.n() && f.ambient_dim() == pair.n(), "GK datum: W0/F dimension mismatch");
    require(w0.contains(f), "GK datum: F is not contained in W0");
  }

  ReductionDatum component(int i) const { return {i == 1 ? pair.j1 : pair.j2, w0, f}; }
};

struct GKConditionReport {
  std::size_t quad_dim = 0;  ///< dim of B cap J1 B cap J2 B cap J1 J2 B
  bool surjective = false;
  /// Phi(E^a cap E_b) for (a, b) = (+,+), (+,-), (-,+), (-,-); E^ for J1, E_ for J2.
  std::array<CSubspace, 4> phi_summands;
  bool direct = false;
  std::optional<Vec<Rational>> missing;  ///< reduced vector without a lift in the quadruple intersection
};

inline QSubspace quad_intersection(const GKDatum& d) {
  LiftSpace l = lift_space(d.component(1));
  const GCStructure& j1 = d.pair.j1;
  const GCStructure& j2 = d.pair.j2;
  QSubspace k = intersect(l.b, j1.apply(l.b));
  k = intersect(k, j2.apply(l.b));
  return intersect(k, image(QMatrix(j1.matrix() * j2.matrix()), l.b));
}

inline GKConditionReport gk_check(const GKDatum& d) {
  GKConditionReport rep;
  ReductionDatum d1 = d.component(1);
  const std::size_t r = d1.reduced_dim();
  LiftSpace l = lift_space(d1);
  ProjectionPi p = projection_pi(d1);
  QSubspace k4 = quad_intersection(d);
  rep.quad_dim = k4.dim();
  QSubspace image_k4 = p.apply(k4);
  rep.surjective = image_k4.dim() == 2 * r;
  for (std::size_t i = 0; i < 2 * r && !rep.surjective; ++i) {
    Vec<Rational> e(2 * r, Rational(0));
    e[i] = 1;
    if (!image_k4.contains(e)) rep.missing = std::move(e);
    if (rep.missing) break;
  }

  CSubspace bc = complexify(l.b);
  auto phi = [&](const CSubspace& s) { return p.apply(intersect(s, bc)); };
  EigenPair e1 = eigenbundles(d.pair.j1), e2 = eigenbundles(d.pair.j2);
  const std::array<const CSubspace*, 2> up{&e1.plus, &e1.minus}, down{&e2.plus, &e2.minus};
  std::size_t dims = 0;
  CSubspace total = CSubspace::zero(2 * r);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      CSubspace s = phi(intersect(*up[a], *down[b]));
      dims += s.dim();
      total = sum(total, s);
      rep.phi_summands[2 * a + b] = std::move(s);
    }
  rep.direct = dims == total.dim();

  if (rep.surjective) {
    ensure(rep.direct && total.is_whole(), "gk_check: Phi summands do not split the reduced space");
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        ensure(rep.phi_summands[2 * a + b] == intersect(phi(*up[a]), phi(*down[b])),
               "gk_check: Phi(E cap E) != Phi(E) cap Phi(E)");
  }
  return rep;
}

class GKReductionObstructed : public std::runtime_error {
 public:
  explicit GKReductionObstructed(GKConditionReport rep)
      : std::runtime_error("generalized Kahler reduction obstructed"), report_(std::move(rep)) {}
  const GKConditionReport& report() const { return report_; }

 private:
  GKConditionReport report_;
};

struct ReducedGKPair {
  GKPair pair;
  ProjectionPi pi;
};

inline ReducedGKPair gk_reduce(const GKDatum& d) {
  GKConditionReport rep = gk_check(d);
  if (!rep.surjective) throw GKReductionObstructed(std::move(rep));
  ReducedGCS r1 = reduce(d.component(1));
  ReducedGCS r2 = reduce(d.component(2));
  QSubspace k4 = quad_intersection(d);
  for (const auto& w : k4.basis_vectors()) {
    ensure(r1.pi.apply(d.pair.j1.apply(w)) == r1.j_g.apply(r1.pi.apply(w)), "gk_reduce: J1_G diagram fails");
    ensure(r1.pi.apply(d.pair.j2.apply(w)) == r2.j_g.apply(r1.pi.apply(w)), "gk_reduce: J2_G diagram fails");
  }
  GKDiagnostics diag = is_generalized_kahler(r1.j_g, r2.j_g);
  ensure(diag.ok(), "gk_reduce: reduced pair is not generalized Kahler (" + diag.failed + ")");
  return {GKPair(std::move(r1.j_g), std::move(r2.j_g)), std::move(r1.pi)};
}

/// omega_+/-(F) = W0^0 for both signs, and F^perp_g cap W0 stable under omega_+/-^{-1} b for both signs.
inline bool check_final_theorem(const GualtieriQuadruple& q, const QSubspace& w0, const QSubspace& f) {
  require(w0.ambient_dim() == q.n() && f.ambient_dim() == q.n(), "check_final_theorem: dimension mismatch");
  require(w0.contains(f), "check_final_theorem: F is not contained in W0");
  const QSubspace w0_ann = annihilator(w0);
  const QSubspace s = intersect(orthogonal(f, q.g), w0);
  bool ok = true;
  for (int sign : {+1, -1}) {
    QMatrix wf = flat(q.omega(sign));
    ok = ok && image(wf, f) == w0_ann;
    QMatrix m = inverse(wf) * flat(q.b);
    ok = ok && s.contains(image(m, s));
  }
  if (ok) {
    GKDatum d(from_quadruple(q), w0, f);
    ensure(gk_check(d).surjective, "check_final_theorem holds but Pi is not onto from the quadruple intersection");
  }
  return ok;
}

}  // namespace diracred
