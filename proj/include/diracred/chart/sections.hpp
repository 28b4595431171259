#pragma once

// Sections of T(+)T* on a polynomial chart: Courant bracket, phi-relatedness, J fields,
// the Nijenhuis-type integrability defect and pointwise involutivity falsification.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diracred/chart/forms.hpp"
#include "diracred/gcs.hpp"

namespace diracred::chart {

/// Degree bound applied to symbolic inputs of the public operations below.
struct Limits {
  unsigned max_degree = kDefaultMaxDegree;
};

struct PolySection {
  VectorField x;
  std::vector<Polynomial> xi;

  static PolySection zero(std::size_t n) { return {zero_field(n), zero_field(n)}; }
  /// d/dx_{i+1}.
  static PolySection vector(std::size_t n, std::size_t i) { return {coordinate_field(n, i), zero_field(n)}; }
  /// dx_{i+1}.
  static PolySection covector(std::size_t n, std::size_t i) { return {zero_field(n), coordinate_field(n, i)}; }

  std::size_t n() const { return x.size(); }
  Form one_form() const { return Form::one_form(xi); }
  bool is_zero() const {
    for (const auto& p : x)
      if (!p.is_zero()) return false;
    for (const auto& p : xi)
      if (!p.is_zero()) return false;
    return true;
  }

  /// Coordinates (X; xi) at a rational point.
  Vec<Rational> at(const std::vector<Rational>& point) const {
    Vec<Rational> v;
    v.reserve(2 * n());
    for (const auto& p : x) v.push_back(p.evaluate(point));
    for (const auto& p : xi) v.push_back(p.evaluate(point));
    return v;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& p : x) d = std::max(d, p.degree());
    for (const auto& p : xi) d = std::max(d, p.degree());
    return d;
  }

  PolySection& operator+=(const PolySection& o) {
    check(o);
    for (std::size_t i = 0; i < n(); ++i) {
      x[i] += o.x[i];
      xi[i] += o.xi[i];
    }
    return *this;
  }
  PolySection& operator-=(const PolySection& o) {
    check(o);
    for (std::size_t i = 0; i < n(); ++i) {
      x[i] -= o.x[i];
      xi[i] -= o.xi[i];
    }
    return *this;
  }
  friend PolySection operator+(PolySection a, const PolySection& b) { return a += b; }
  friend PolySection operator-(PolySection a, const PolySection& b) { return a -= b; }
  friend PolySection operator*(const Polynomial& f, PolySection a) {
    for (std::size_t i = 0; i < a.n(); ++i) {
      a.x[i] = f * a.x[i];
      a.xi[i] = f * a.xi[i];
    }
    return a;
  }
  friend bool operator==(const PolySection& a, const PolySection& b) = default;

  void validate() const {
    require(xi.size() == x.size(), "section: X and xi have different lengths");
    for (const auto& p : x) require(p.nvars() == n(), "section: component has wrong variable count");
    for (const auto& p : xi) require(p.nvars() == n(), "section: component has wrong variable count");
  }

 private:
  void check(const PolySection& o) const { require(o.n() == n(), "section dimension mismatch"); }
};

inline void check_degree(const PolySection& s, const Limits& lim, const std::string& what) {
  if (s.degree() > lim.max_degree)
    throw ResourceError(what + ": degree " + std::to_string(s.degree()) + " exceeds the bound " +
                        std::to_string(lim.max_degree));
}

inline std::string to_string(const PolySection& s) {
  std::string out = "X = [";
  for (std::size_t i = 0; i < s.n(); ++i) out += (i ? "; " : "") + to_string(s.x[i]);
  out += "], xi = [";
  for (std::size_t i = 0; i < s.n(); ++i) out += (i ? "; " : "") + to_string(s.xi[i]);
  return out + "]";
}

/// [[X+xi, Y+eta]] = [X,Y] + L_X eta - L_Y xi + 1/2 d(xi(Y) - eta(X)).
inline PolySection courant_bracket(const PolySection& s1, const PolySection& s2, const Limits& lim = {}) {
  s1.validate();
  s2.validate();
  require(s1.n() == s2.n(), "courant_bracket: sections live on different charts");
  check_degree(s1, lim, "courant_bracket");
  check_degree(s2, lim, "courant_bracket");
  const Form xi = s1.one_form(), eta = s2.one_form();
  Form f = lie_derivative(s1.x, eta) - lie_derivative(s2.x, xi);
  const Polynomial half_diff = (pair(xi, s2.x) - pair(eta, s1.x)) * Rational(1, 2);
  f += exterior_d(half_diff);
  return {lie_bracket(s1.x, s2.x), f.components()};
}

/// Polynomial map phi: R^n -> R^m.
struct PolyMap {
  std::size_t n = 0;
  std::vector<Polynomial> components;

  std::size_t m() const { return components.size(); }
  void validate() const {
    for (const auto& c : components) require(c.nvars() == n, "PolyMap: component has wrong variable count");
  }

  /// phi_* X as components over the source chart.
  std::vector<Polynomial> pushforward(const VectorField& x) const {
    require(x.size() == n, "pushforward: dimension mismatch");
    std::vector<Polynomial> out;
    for (const auto& c : components) out.push_back(derive(x, c));
    return out;
  }
  /// Y o phi.
  std::vector<Polynomial> compose(const std::vector<Polynomial>& y) const {
    require(y.size() == m(), "compose: dimension mismatch");
    std::vector<Polynomial> out;
    for (const auto& c : y) out.push_back(c.compose(components));
    return out;
  }
  /// phi^* eta as components, (phi^* eta)_i = sum_a eta_a(phi) d phi^a / dx_i.
  std::vector<Polynomial> pullback(const std::vector<Polynomial>& eta) const {
    const std::vector<Polynomial> at_phi = compose(eta);
    std::vector<Polynomial> out(n, Polynomial(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < m(); ++a) out[i] += at_phi[a] * components[a].derivative(i);
    return out;
  }
};

/// phi_* X = Y o phi and phi^* eta = xi, as polynomial identities.
inline bool phi_related(const PolyMap& phi, const PolySection& s_m, const PolySection& s_n, const Limits& lim = {}) {
  phi.validate();
  s_m.validate();
  s_n.validate();
  require(s_m.n() == phi.n && s_n.n() == phi.m(), "phi_related: section dimensions do not match the map");
  check_degree(s_m, lim, "phi_related");
  check_degree(s_n, lim, "phi_related");
  return phi.pushforward(s_m.x) == phi.compose(s_n.x) && phi.pullback(s_n.xi) == s_m.xi;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

inline PolyMatrix poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
  return PolyMatrix(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
}

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars) {
  require(!a.empty() && a[0].size() == b.size(), "multiply: shape mismatch");
  PolyMatrix out = poly_matrix(a.size(), b[0].size(), nvars);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

/// Cofactor expansion; fine for the small charts used here.
inline Polynomial determinant(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(nvars, Rational(1));
  if (n == 1) return m[0][0];
  Polynomial out(nvars);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][c] * determinant(minor, nvars);
    if (c % 2 == 0)
      out += t;
    else
      out -= t;
  }
  return out;
}

/// Inverse of a polynomial matrix whose determinant is a nonzero constant.
inline PolyMatrix unimodular_inverse(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.size();
  const Polynomial det = determinant(m, nvars);
  if (det.is_zero() || det.degree() > 0)
    throw InvalidInput("matrix inverse is not polynomial (determinant " + to_string(det) + ")");
  const Rational inv = 1 / det.coefficient(Exponents(nvars, 0));
  PolyMatrix out = poly_matrix(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Polynomial> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i) row.push_back(m[r][k]);
        minor.push_back(std::move(row));
      }
      Polynomial cof = determinant(minor, nvars) * inv;
      out[i][j] = (i + j) % 2 == 0 ? cof : -cof;
    }
  return out;
}

/// Bundle endomorphism of T(+)T* with polynomial entries, acting on columns (X; xi).
class JField {
 public:
  /// Validates J^2 = -I and J^T Q J = Q as polynomial identities.
  JField(std::size_t n, PolyMatrix m) : n_(n), m_(std::move(m)) {
    require(m_.size() == 2 * n_, "JField: matrix must be 2n x 2n");
    for (const auto& row : m_) {
      require(row.size() == 2 * n_, "JField: matrix must be 2n x 2n");
      for (const auto& p : row) require(p.nvars() == n_, "JField: entry has wrong variable count");
    }
    const std::size_t d = 2 * n_;
    PolyMatrix sq = multiply(m_, m_, n_);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        require(sq[i][j] == Polynomial(n_, Rational(i == j ? -1 : 0)), "JField: J^2 != -I");
    // With Q = 1/2 [[0, I], [I, 0]], J^T Q J = Q is equivalent to J^T S J = S for S the swap.
    PolyMatrix swap = poly_matrix(d, d, n_), jt = poly_matrix(d, d, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      swap[i][n_ + i] = Polynomial(n_, Rational(1));
      swap[n_ + i][i] = Polynomial(n_, Rational(1));
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) jt[i][j] = m_[j][i];
    require(multiply(multiply(jt, swap, n_), m_, n_) == swap, "JField: J is not orthogonal for the pairing");
  }

  static JField constant(const GCStructure& j) {
    const std::size_t n = j.n();
    PolyMatrix m = poly_matrix(2 * n, 2 * n, n);
    for (std::size_t r = 0; r < 2 * n; ++r)
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] = Polynomial(n, j.matrix()(r, c));
    return JField(n, std::move(m));
  }

  /// [[0, -omega_flat^{-1}], [omega_flat, 0]]; omega_flat must have polynomial inverse.
  static JField symplectic(const Form& omega) {
    require(omega.degree() == 2, "JField::symplectic: not a 2-form");
    const std::size_t n = omega.n();
    PolyMatrix flat_map = poly_matrix(n, n, n);
    // flat(X)_j = omega(X, e_j), so flat_map[j][i] = omega_ij.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Polynomial c = omega.coefficient({std::min(i, j), std::max(i, j)});
        flat_map[j][i] = i < j ? c : -c;
      }
    PolyMatrix inv = unimodular_inverse(flat_map, n);
    PolyMatrix m = poly_matrix(2 * n, 2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[i][n + j] = -inv[i][j];
        m[n + i][j] = flat_map[i][j];
      }
    return JField(n, std::move(m));
  }

  std::size_t n() const { return n_; }
  const PolyMatrix& matrix() const { return m_; }

  PolySection apply(const PolySection& s) const {
    require(s.n() == n_, "JField::apply: dimension mismatch");
    PolySection out = PolySection::zero(n_);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
      Polynomial acc(n_);
      for (std::size_t c = 0; c < n_; ++c) acc += m_[r][c] * s.x[c] + m_[r][n_ + c] * s.xi[c];
      (r < n_ ? out.x[r] : out.xi[r - n_]) = std::move(acc);
    }
    return out;
  }

  GCStructure at(const std::vector<Rational>& point) const {
    QMatrix j(2 * n_, 2 * n_);
    for (std::size_t r = 0; r < 2 * n_; ++r)
      for (std::size_t c = 0; c < 2 * n_; ++c) j(r, c) = m_[r][c].evaluate(point);
    return GCStructure(std::move(j));
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& row : m_)
      for (const auto& p : row) d = std::max(d, p.degree());
    return d;
  }

 private:
  std::size_t n_;
  PolyMatrix m_;
};

/// [[Je1,Je2]] - [[e1,e2]] - J([[Je1,e2]] + [[e1,Je2]]); zero iff the pair satisfies integrability.
inline PolySection nijenhuis_defect(const JField& j, const PolySection& e1, const PolySection& e2,
                                    const Limits& lim = {}) {
  require(e1.n() == j.n() && e2.n() == j.n(), "nijenhuis_defect: dimension mismatch");
  if (j.degree() > lim.max_degree) throw ResourceError("nijenhuis_defect: J exceeds the degree bound");
  check_degree(e1, lim, "nijenhuis_defect");
  check_degree(e2, lim, "nijenhuis_defect");
  // Intermediate sections may legitimately exceed the input bound.
  const Limits open{~0u};
  const PolySection je1 = j.apply(e1), je2 = j.apply(e2);
  PolySection out = courant_bracket(je1, je2, open) - courant_bracket(e1, e2, open);
  out -= j.apply(courant_bracket(je1, e2, open) + courant_bracket(e1, je2, open));
  return out;
}

/// X + (X _| omega).
inline PolySection graph_section(const Form& omega, const VectorField& x) {
  require(omega.degree() == 2, "graph_section: not a 2-form");
  return {x, interior(x, omega).components()};
}

/// Generators d/dx_i + (d/dx_i _| omega) of graph(omega).
inline std::vector<PolySection> graph_generators(const Form& omega) {
  std::vector<PolySection> out;
  for (std::size_t i = 0; i < omega.n(); ++i) out.push_back(graph_section(omega, coordinate_field(omega.n(), i)));
  return out;
}

struct InvolutivityWitness {
  std::size_t first;   ///< generator indices, 0-based
  std::size_t second;
  std::vector<Rational> point;
  Vec<Rational> bracket;  ///< bracket value at the point, outside the span
};

struct InvolutivityResult {
  bool not_falsified;  ///< true is "no counterexample at these points", not a proof
  std::optional<InvolutivityWitness> witness;
};

/// Evaluates every generator bracket at every point and tests membership in the pointwise span.
inline InvolutivityResult involutivity_sample_check(const std::vector<PolySection>& gens,
                                                    const std::vector<std::vector<Rational>>& points,
                                                    const Limits& lim = {}) {
  require(!gens.empty(), "involutivity_sample_check: no generators");
  const std::size_t n = gens[0].n();
  for (const auto& g : gens) {
    g.validate();
    require(g.n() == n, "involutivity_sample_check: generators on different charts");
    check_degree(g, lim, "involutivity_sample_check");
  }
  std::vector<QSubspace> spans;
  for (const auto& p : points) {
    require(p.size() == n, "involutivity_sample_check: point has wrong dimension");
    std::vector<Vec<Rational>> vals;
    for (const auto& g : gens) vals.push_back(g.at(p));
    QSubspace s = QSubspace::span(vals, 2 * n);
    if (s.dim() != gens.size()) {
      std::string where;
      for (std::size_t i = 0; i < p.size(); ++i) where += (i ? ", " : "") + p[i].get_str();
      throw InvalidInput("involutivity_sample_check: generators are dependent at point (" + where + ")");
    }
    spans.push_back(std::move(s));
  }
  const Limits open{~0u};
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const PolySection br = courant_bracket(gens[a], gens[b], open);
      for (std::size_t k = 0; k < points.size(); ++k) {
        Vec<Rational> v = br.at(points[k]);
        if (!spans[k].contains(v)) return {false, InvolutivityWitness{a, b, points[k], std::move(v)}};
      }
    }
  return {true, std::nullopt};
}

}  // namespace diracred::chart
