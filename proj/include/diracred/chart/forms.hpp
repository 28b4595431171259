#pragma once

// Differential forms and vector fields with polynomial coefficients on a single chart.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "diracred/chart/polynomial.hpp"

namespace diracred::chart {

/// Vector field as its n polynomial components.
using VectorField = std::vector<Polynomial>;

inline VectorField zero_field(std::size_t n) { return VectorField(n, Polynomial(n)); }

/// Coordinate field d/dx_{i+1}.
inline VectorField coordinate_field(std::size_t n, std::size_t i) {
  VectorField v = zero_field(n);
  v.at(i) = Polynomial(n, Rational(1));
  return v;
}

/// X(f) = sum_i X^i df/dx_i.
inline Polynomial derive(const VectorField& x, const Polynomial& f) {
  require(x.size() == f.nvars(), "vector field / function dimension mismatch");
  Polynomial out(f.nvars());
  for (std::size_t i = 0; i < x.size(); ++i) out += x[i] * f.derivative(i);
  return out;
}

/// [X, Y]^i = X(Y^i) - Y(X^i).
inline VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require(x.size() == y.size(), "lie_bracket: dimension mismatch");
  VectorField out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(derive(x, y[i]) - derive(y, x[i]));
  return out;
}

/// k-form sum_I c_I dx^{i1} ^ ... ^ dx^{ik} over strictly increasing 0-based index tuples I.
class Form {
 public:
  using Index = std::vector<std::size_t>;

  Form() = default;
  /// Degrees above n are allowed; such forms are identically zero.
  Form(std::size_t n, std::size_t k) : n_(n), k_(k) {}

  static Form function(const Polynomial& f) {
    Form out(f.nvars(), 0);
    out.add(Index{}, f);
    return out;
  }
  /// dx_{i+1}.
  static Form dx(std::size_t n, std::size_t i) {
    require(i < n, "dx index out of range");
    Form out(n, 1);
    out.add(Index{i}, Polynomial(n, Rational(1)));
    return out;
  }
  static Form one_form(const std::vector<Polynomial>& comps) {
    const std::size_t n = comps.size();
    Form out(n, 1);
    for (std::size_t i = 0; i < n; ++i) out.add(Index{i}, comps[i]);
    return out;
  }
  /// 2-form from the matrix omega_ij = omega(e_i, e_j); entries must be antisymmetric.
  static Form two_form(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    Form out(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      require(m[i].size() == n, "two_form: matrix must be square");
      for (std::size_t j = 0; j < n; ++j)
        require(m[i][j] == -m[j][i], "two_form: matrix is not antisymmetric");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.add(Index{i, j}, m[i][j]);
    return out;
  }

  std::size_t n() const { return n_; }
  std::size_t degree() const { return k_; }
  const std::map<Index, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial coefficient(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Polynomial(n_) : it->second;
  }

  /// Components of a 1-form.
  std::vector<Polynomial> components() const {
    require(k_ == 1, "components: not a 1-form");
    std::vector<Polynomial> out(n_, Polynomial(n_));
    for (const auto& [idx, c] : terms_) out[idx[0]] = c;
    return out;
  }

  /// Adds c dx^{idx}; idx need not be sorted (sign follows the permutation, repeats vanish).
  void add(const Index& idx, const Polynomial& c) {
    require(idx.size() == k_, "form index has wrong length");
    require(c.nvars() == n_, "form coefficient has wrong variable count");
    Index sorted = idx;
    int sign = 1;
    // Bubble sort tracks the permutation parity; k is small.
    for (std::size_t a = 0; a < sorted.size(); ++a)
      for (std::size_t b = 0; b + 1 < sorted.size() - a; ++b) {
        if (sorted[b] == sorted[b + 1]) return;
        if (sorted[b] > sorted[b + 1]) {
          std::swap(sorted[b], sorted[b + 1]);
          sign = -sign;
        }
      }
    for (std::size_t a = 0; a + 1 < sorted.size(); ++a)
      if (sorted[a] == sorted[a + 1]) return;
    for (std::size_t a : sorted) require(a < n_, "form index out of range");
    if (c.is_zero()) return;
    Polynomial& slot = terms_.try_emplace(sorted, Polynomial(n_)).first->second;
    if (sign > 0)
      slot += c;
    else
      slot -= c;
    if (slot.is_zero()) terms_.erase(sorted);
  }

  Form& operator+=(const Form& o) {
    check(o);
    for (const auto& [idx, c] : o.terms_) add(idx, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check(o);
    for (const auto& [idx, c] : o.terms_) add(idx, -c);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Polynomial& f, const Form& a) {
    Form out(a.n_, a.k_);
    for (const auto& [idx, c] : a.terms_) out.add(idx, f * c);
    return out;
  }
  friend Form operator*(const Rational& s, const Form& a) { return Polynomial(a.n_, s) * a; }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.k_ == b.k_ && a.terms_ == b.terms_; }

  unsigned max_coefficient_degree() const {
    unsigned d = 0;
    for (const auto& [idx, c] : terms_) d = std::max(d, c.degree());
    return d;
  }

 private:
  void check(const Form& o) const { require(o.n_ == n_ && o.k_ == k_, "form shape mismatch"); }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::map<Index, Polynomial> terms_;
};

inline Form wedge(const Form& a, const Form& b) {
  require(a.n() == b.n(), "wedge: dimension mismatch");
  Form out(a.n(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      Form::Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, ca * cb);
    }
  return out;
}

inline Form exterior_d(const Form& a) {
  Form out(a.n(), a.degree() + 1);
  for (const auto& [idx, c] : a.terms())
    for (std::size_t i = 0; i < a.n(); ++i) {
      Form::Index full{i};
      full.insert(full.end(), idx.begin(), idx.end());
      out.add(full, c.derivative(i));
    }
  return out;
}

inline Form exterior_d(const Polynomial& f) { return exterior_d(Form::function(f)); }

/// Interior product, (X _| a)(Y, ...) = a(X, Y, ...).
inline Form interior(const VectorField& x, const Form& a) {
  require(x.size() == a.n(), "interior: dimension mismatch");
  require(a.degree() >= 1, "interior: 0-form");
  Form out(a.n(), a.degree() - 1);
  for (const auto& [idx, c] : a.terms())
    for (std::size_t m = 0; m < idx.size(); ++m) {
      Form::Index rest;
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != m) rest.push_back(idx[t]);
      Polynomial term = x[idx[m]] * c;
      out.add(rest, m % 2 == 0 ? term : -term);
    }
  return out;
}

/// Value of a 0-form as a polynomial.
inline Polynomial as_function(const Form& a) {
  require(a.degree() == 0, "as_function: not a 0-form");
  return a.coefficient({});
}

/// L_X a = X _| da + d(X _| a).
inline Form lie_derivative(const VectorField& x, const Form& a) {
  if (a.degree() == 0) return Form::function(derive(x, as_function(a)));
  Form out = interior(x, exterior_d(a));
  out += exterior_d(interior(x, a));
  return out;
}

/// xi(X) for a 1-form xi.
inline Polynomial pair(const Form& xi, const VectorField& x) { return as_function(interior(x, xi)); }

inline std::string to_string(const Form& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [idx, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    std::string basis;
    for (std::size_t t = 0; t < idx.size(); ++t) basis += (t ? "^dx" : "dx") + std::to_string(idx[t] + 1);
    if (idx.empty())
      out += "(" + to_string(c) + ")";
    else
      out += "(" + to_string(c) + ") " + basis;
  }
  return out;
}

}  // namespace diracred::chart
