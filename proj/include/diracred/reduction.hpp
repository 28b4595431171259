#pragma once

// Pointwise reduction of a linear generalized complex structure along
// V >- W0 ->> W0/F, with F <= W0 <= V.
//
//   B     = W0 (+) F^0      (lifts)
//   B_perp = F (+) W0^0     (kernel of Pi, and the pairing-orthogonal of B)

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diracred/gcs.hpp"

namespace diracred {

struct ReductionDatum {
  GCStructure j;
  QSubspace w0;
  QSubspace f;

  ReductionDatum(GCStructure j_, QSubspace w0_, QSubspace f_) : j(std::move(j_)), w0(std::move(w0_)), f(std::move(f_)) {
    require(w0.ambient_dim() == j.n() && f.ambient_dim() == j.n(), "datum: W0/F must live in V of dimension n");
    require(w0.contains(f), "datum: F is not contained in W0");
  }

  std::size_t n() const { return j.n(); }
  std::size_t reduced_dim() const { return w0.dim() - f.dim(); }
};

struct LiftSpace {
  QSubspace b;
  QSubspace b_perp;
};

inline LiftSpace lift_space(const ReductionDatum& d) {
  LiftSpace l{direct_sum(d.w0, annihilator(d.f)), direct_sum(d.f, annihilator(d.w0))};
  ensure(l.b.contains(l.b_perp), "lift_space: B_perp not inside B");
  ensure(pairing_orthogonal(l.b) == l.b_perp, "lift_space: B_perp is not the orthogonal of B");
  return l;
}

/// Pi : B -> (W0/F) (+) (W0/F)*, written as a matrix on all of V (+) V*.
///
/// Quotient coordinates: the canonical basis of F is completed inside W0 by
/// canonical W0 rows c_1..c_r; X mod F has coordinates a with X = sum a_k c_k + (F part),
/// and xi' has coordinates xi(c_k).
struct ProjectionPi {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<Vec<Rational>> complement;  ///< c_1..c_r
  QMatrix matrix = QMatrix(0, 0);         ///< 2r x 2n
  QMatrix dual = QMatrix(0, 0);           ///< n x r, covectors xi with xi(c_k) = delta, zero on F

  Vec<Rational> apply(const Vec<Rational>& v) const { return matrix.apply(v); }
  QSubspace apply(const QSubspace& s) const { return image(matrix, s); }
  CSubspace apply(const CSubspace& s) const { return image(complexify(matrix), s); }
  Vec<Complex> apply(const Vec<Complex>& v) const { return complexify(matrix).apply(v); }

  /// A lift of reduced coordinates (a, b): sum a_k c_k plus the covector sum b_k dual_k.
  Vec<Rational> lift(const Vec<Rational>& reduced) const {
    require(reduced.size() == 2 * r, "lift: wrong reduced dimension");
    QMatrix s = QMatrix(2 * n, 2 * r);
    s.set_block(0, 0, QMatrix::from_columns(complement, n));
    s.set_block(n, r, dual);
    return s.apply(reduced);
  }
};

inline ProjectionPi projection_pi(const ReductionDatum& d) {
  const std::size_t n = d.n();
  ProjectionPi p;
  p.n = n;
  p.r = d.reduced_dim();

  std::vector<Vec<Rational>> frame = d.f.basis_vectors();
  QSubspace acc = d.f;
  for (const auto& w : d.w0.basis_vectors()) {
    if (acc.contains(w)) continue;
    p.complement.push_back(w);
    frame.push_back(w);
    acc = sum(acc, QSubspace::span(std::vector<Vec<Rational>>{w}, n));
  }
  ensure(p.complement.size() == p.r, "projection_pi: complement has wrong size");
  for (std::size_t i = 0; i < n && frame.size() < n; ++i) {
    Vec<Rational> e(n, Rational(0));
    e[i] = 1;
    if (acc.contains(e)) continue;
    frame.push_back(e);
    acc = sum(acc, QSubspace::span(std::vector<Vec<Rational>>{e}, n));
  }
  QMatrix pinv = inverse(QMatrix::from_columns(frame, n));
  const std::size_t f = d.f.dim();

  p.matrix = QMatrix(2 * p.r, 2 * n);
  p.dual = QMatrix(n, p.r);
  for (std::size_t k = 0; k < p.r; ++k) {
    for (std::size_t c = 0; c < n; ++c) {
      p.matrix(k, c) = pinv(f + k, c);
      p.matrix(p.r + k, n + c) = p.complement[k][c];
      p.dual(c, k) = pinv(f + k, c);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Conditions

struct Witness {
  int condition = 0;         ///< 1..7
  Vec<Complex> vector;       ///< real conditions carry real entries
  std::string space;         ///< "V+V*" or "reduced"
};

struct ConditionReport {
  std::array<bool, 7> holds{};
  std::array<std::optional<Witness>, 7> witnesses;

  bool all() const { return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; }); }
  bool none() const { return std::none_of(holds.begin(), holds.end(), [](bool b) { return b; }); }
  bool unanimous() const { return all() || none(); }
};

namespace detail {

template <ExactField F>
bool lex_less(const Vec<F>& a, const Vec<F>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = scalar_order(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

/// Lexicographically smallest basis vector of `s` outside `target`.
template <ExactField F>
std::optional<Vec<F>> first_outside(const Subspace<F>& s, const Subspace<F>& target) {
  std::optional<Vec<F>> best;
  for (const auto& v : s.basis_vectors()) {
    if (target.contains(v)) continue;
    if (!best || lex_less(v, *best)) best = v;
  }
  return best;
}

inline Vec<Complex> as_complex(const Vec<Rational>& v) { return complexify(v); }
inline Vec<Complex> as_complex(const Vec<Complex>& v) { return v; }

template <ExactField F>
void record(ConditionReport& rep, int c, const std::optional<Vec<F>>& bad, const char* space) {
  rep.holds[c - 1] = !bad.has_value();
  if (bad) rep.witnesses[c - 1] = Witness{c, as_complex(*bad), space};
}

struct Complexified {
  CSubspace b, b_perp, f_tan, w0_ann;
};

inline Complexified complexified(const ReductionDatum& d, const LiftSpace& l) {
  PairingSpace ps{d.n()};
  return {complexify(l.b), complexify(l.b_perp), complexify(ps.tangent_part(d.f)),
          complexify(ps.cotangent_part(annihilator(d.w0)))};
}

}  // namespace detail

struct ReducedEigenspaces {
  CSubspace plus;
  CSubspace minus;
};

/// E'_+/- = Pi((E_+/- + (W0^0)_C) cap B_C).
inline ReducedEigenspaces reduced_eigenspaces(const ReductionDatum& d) {
  LiftSpace l = lift_space(d);
  ProjectionPi p = projection_pi(d);
  detail::Complexified c = detail::complexified(d, l);
  EigenPair e = eigenbundles(d.j);
  CSubspace plus = p.apply(intersect(sum(e.plus, c.w0_ann), c.b));
  CSubspace minus = p.apply(intersect(sum(e.minus, c.w0_ann), c.b));
  return {std::move(plus), std::move(minus)};
}

/// Evaluates the seven equivalent reduction conditions independently.
/// Disagreement among them is reported as an InternalError.
inline ConditionReport check_conditions(const ReductionDatum& d) {
  ConditionReport rep;
  const std::size_t n = d.n();
  const std::size_t r = d.reduced_dim();
  LiftSpace l = lift_space(d);
  detail::Complexified c = detail::complexified(d, l);
  EigenPair e = eigenbundles(d.j);
  ReducedEigenspaces red = reduced_eigenspaces(d);

  // (1) E'+ cap E'- = 0
  {
    CSubspace meet = intersect(red.plus, red.minus);
    detail::record(rep, 1, detail::first_outside(meet, CSubspace::zero(2 * r)), "reduced");
  }
  // (2) (E+ + F_C) cap B_C cap (E- + (W0^0)_C) <= B_perp_C
  {
    CSubspace triple = intersect(intersect(sum(e.plus, c.f_tan), c.b), sum(e.minus, c.w0_ann));
    detail::record(rep, 2, detail::first_outside(triple, c.b_perp), "V+V*");
  }
  // (3) z in B_perp_C, z = z+ + z-, z_+/- in E_+/- cap B_C  =>  z_+/- in B_perp_C
  {
    const std::size_t d2 = 2 * n;
    CSubspace pairs = direct_sum(intersect(e.plus, c.b), intersect(e.minus, c.b));
    CMatrix add(d2, 2 * d2);
    for (std::size_t i = 0; i < d2; ++i) {
      add(i, i) = Complex(1);
      add(i, d2 + i) = Complex(1);
    }
    CSubspace admissible = intersect(pairs, preimage(add, c.b_perp));
    CMatrix first(d2, 2 * d2), second(d2, 2 * d2);
    for (std::size_t i = 0; i < d2; ++i) {
      first(i, i) = Complex(1);
      second(i, d2 + i) = Complex(1);
    }
    CSubspace parts = sum(image(first, admissible), image(second, admissible));
    detail::record(rep, 3, detail::first_outside(parts, c.b_perp), "V+V*");
  }
  // (4) J(B_perp) cap B <= B_perp
  {
    QSubspace meet = intersect(d.j.apply(l.b_perp), l.b);
    detail::record(rep, 4, detail::first_outside(meet, l.b_perp), "V+V*");
  }
  // (5) J(B) <= B + J(B_perp)
  {
    QSubspace target = sum(l.b, d.j.apply(l.b_perp));
    detail::record(rep, 5, detail::first_outside(d.j.apply(l.b), target), "V+V*");
  }
  // (6) B = (B cap JB) + B_perp
  {
    QSubspace target = sum(intersect(l.b, d.j.apply(l.b)), l.b_perp);
    detail::record(rep, 6, detail::first_outside(l.b, target), "V+V*");
  }
  // (7) E'+ + E'- is everything
  {
    CSubspace total = sum(red.plus, red.minus);
    std::optional<Vec<Complex>> bad;
    for (std::size_t i = 0; i < 2 * r && !bad; ++i) {
      Vec<Complex> v(2 * r, Complex(0));
      v[i] = Complex(1);
      if (!total.contains(v)) bad = v;
    }
    detail::record(rep, 7, bad, "reduced");
  }
  ensure(rep.unanimous(), "check_conditions: the seven equivalent conditions disagree");
  return rep;
}

/// Every reduced vector has a lift in B cap JB (the surjectivity criterion).
inline bool lifts_surjective(const ReductionDatum& d) {
  LiftSpace l = lift_space(d);
  QSubspace k = intersect(l.b, d.j.apply(l.b));
  return projection_pi(d).apply(k).dim() == 2 * d.reduced_dim();
}

// ---------------------------------------------------------------------------
// The reduced structure

struct ReducedGCS {
  std::size_t reduced_dim = 0;
  GCStructure j_g;
  ProjectionPi pi;
};

class ReductionObstructed : public std::runtime_error {
 public:
  explicit ReductionObstructed(ConditionReport rep)
      : std::runtime_error("reduction obstructed: conditions fail"), report_(std::move(rep)) {}
  const ConditionReport& report() const { return report_; }

 private:
  ConditionReport report_;
};

/// J_G(Pi v) := Pi(J v) for v in B cap JB.
inline ReducedGCS reduce(const ReductionDatum& d) {
  const std::size_t r = d.reduced_dim();
  LiftSpace l = lift_space(d);
  ProjectionPi p = projection_pi(d);
  QSubspace k = intersect(l.b, d.j.apply(l.b));
  if (p.apply(k).dim() != 2 * r) throw ReductionObstructed(check_conditions(d));

  QSubspace jbp_b = intersect(d.j.apply(l.b_perp), l.b);
  QSubspace bp_jb = intersect(l.b_perp, d.j.apply(l.b));
  ensure(jbp_b == bp_jb, "reduce: J(B_perp) cap B != B_perp cap JB");
  ensure(d.j.apply(bp_jb) == bp_jb, "reduce: B_perp cap JB is not J-stable");
  ensure(intersect(k, l.b_perp) == bp_jb, "reduce: K cap B_perp != B_perp cap JB");

  std::vector<Vec<Rational>> src, dst;
  QSubspace seen = QSubspace::zero(2 * r);
  for (const auto& v : k.basis_vectors()) {
    Vec<Rational> pv = p.apply(v);
    if (seen.contains(pv)) continue;
    seen = sum(seen, QSubspace::span(std::vector<Vec<Rational>>{pv}, 2 * r));
    src.push_back(pv);
    dst.push_back(p.apply(d.j.apply(v)));
  }
  ensure(src.size() == 2 * r, "reduce: lift basis incomplete");
  QMatrix jg = QMatrix(0, 0);
  if (r > 0) jg = QMatrix::from_columns(dst, 2 * r) * inverse(QMatrix::from_columns(src, 2 * r));

  for (const auto& v : k.basis_vectors())
    ensure(p.apply(d.j.apply(v)) == jg.apply(p.apply(v)), "reduce: J_G is not well defined on B cap JB");

  GCStructure j_g;
  try {
    j_g = GCStructure(jg);
  } catch (const InvalidInput& err) {
    throw InternalError(std::string("reduce: reduced J invalid: ") + err.what());
  }
  return {r, std::move(j_g), std::move(p)};
}

// ---------------------------------------------------------------------------
// Sufficient conditions

/// J(B_perp) = B_perp.
inline bool check_mw(const ReductionDatum& d) {
  LiftSpace l = lift_space(d);
  bool ok = d.j.apply(l.b_perp) == l.b_perp;
  if (ok) ensure(check_conditions(d).all(), "check_mw holds but the reduction conditions fail");
  return ok;
}

/// J(B_perp) cap B = 0.
inline bool check_gs(const ReductionDatum& d) {
  LiftSpace l = lift_space(d);
  bool ok = intersect(d.j.apply(l.b_perp), l.b).is_zero();
  BlockDecomposition blocks = block_decompose(d.j);
  if (blocks.pi_sharp.is_zero() && blocks.sigma_flat.is_zero()) {
    QSubspace jf = image(blocks.n, d.f);
    bool split = d.w0.dim() + jf.dim() == d.n() && sum(d.w0, jf).is_whole();
    ensure(ok == split, "check_gs: disagrees with V = W0 (+) jF for complex J");
  }
  if (ok) ensure(check_conditions(d).all(), "check_gs holds but the reduction conditions fail");
  return ok;
}

/// With T = F + W0^perp_g: is S (+) T^0 J-stable, where S = T^perp_g?
inline bool check_riemannian(const ReductionDatum& d, const QMatrix& g) {
  require(g.square() && g.rows() == d.n(), "check_riemannian: metric has wrong size");
  require(is_positive_definite(g), "check_riemannian: metric is not positive definite");
  QSubspace t = sum(d.f, orthogonal(d.w0, g));
  QSubspace s = orthogonal(t, g);
  QSubspace big_l = direct_sum(s, annihilator(t));
  bool ok = d.j.apply(big_l) == big_l;
  if (ok) ensure(check_conditions(d).all(), "check_riemannian holds but the reduction conditions fail");
  return ok;
}

enum class Classification { symplectic_type, complex_type, mixed };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::symplectic_type: return "symplectic_type";
    case Classification::complex_type: return "complex_type";
    case Classification::mixed: return "mixed";
  }
  return "mixed";
}

inline Classification classify(const GCStructure& j) {
  BlockDecomposition b = block_decompose(j);
  if (b.n.is_zero() && is_invertible(b.sigma_flat)) return Classification::symplectic_type;
  if (b.pi_sharp.is_zero() && b.sigma_flat.is_zero()) return Classification::complex_type;
  return Classification::mixed;
}

inline Classification classify(const ReducedGCS& r) { return classify(r.j_g); }

}  // namespace diracred
