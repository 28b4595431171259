#pragma once

// Sparse multivariate polynomials over Q in chart coordinates x1..xn.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diracred/errors.hpp"
#include "diracred/exactlin/scalar.hpp"

namespace diracred::chart {

/// Default bound on the total degree of symbolic inputs.
inline constexpr unsigned kDefaultMaxDegree = 4;

using Exponents = std::vector<unsigned>;

/// Monomial order: total degree ascending, then x1 before x2 (lex descending on exponents).
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a > b;
  }
};

class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : n_(nvars) {}
  Polynomial(std::size_t nvars, const Rational& c) : n_(nvars) {
    if (sgn(c) != 0) terms_.emplace(Exponents(nvars, 0), c);
  }

  static Polynomial constant(std::size_t nvars, const Rational& c) { return Polynomial(nvars, c); }
  /// x_{i+1}, 0-based index i.
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    require(i < nvars, "variable index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }
  static Polynomial monomial(const Exponents& e, const Rational& c) {
    Polynomial p(e.size());
    if (sgn(c) != 0) p.terms_.emplace(e, c);
    return p;
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned t = 0;
      for (unsigned x : e) t += x;
      d = std::max(d, t);
    }
    return d;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  /// Partial derivative in x_{i+1}.
  Polynomial derivative(std::size_t i) const {
    require(i < n_, "derivative index out of range");
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      f[i] -= 1;
      out.add_term(f, c * e[i]);
    }
    return out;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    require(point.size() == n_, "evaluate: point has wrong dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < n_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  /// p(q_1, ..., q_n) for polynomials q_i in a common set of variables.
  Polynomial compose(const std::vector<Polynomial>& subs) const {
    require(subs.size() == n_, "compose: wrong number of substitutions");
    require(!subs.empty() || terms_.empty() || n_ == 0, "compose: empty substitution");
    const std::size_t m = subs.empty() ? 0 : subs[0].nvars();
    Polynomial out(m);
    for (const auto& [e, c] : terms_) {
      Polynomial t(m, c);
      for (std::size_t i = 0; i < n_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = t * subs[i];
      out += t;
    }
    return out;
  }

 private:
  void check(const Polynomial& o) const { require(o.n_ == n_, "polynomial variable count mismatch"); }
  void add_term(const Exponents& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  std::size_t n_ = 0;
  Terms terms_;
};

inline void check_degree(const Polynomial& p, unsigned max_degree, const std::string& what) {
  if (p.degree() > max_degree)
    throw ResourceError(what + ": degree " + std::to_string(p.degree()) + " exceeds the bound " +
                        std::to_string(max_degree));
}

/// Canonical text: "3/2 x1^2 x3 - x2 + 1" style, terms in monomial order.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    bool constant = true;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      constant = false;
      if (!mono.empty()) mono += " ";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    std::string term;
    if (constant)
      term = mag.get_str();
    else if (mag == 1)
      term = mono;
    else
      term = mag.get_str() + " " + mono;
    if (first)
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

/// Parses sums of terms "c x1^a x2^b" with +/- separators; '*' between factors is allowed.
inline Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  Polynomial out(nvars);
  std::size_t i = 0;
  const std::size_t len = text.size();
  auto skip = [&] {
    while (i < len && (text[i] == ' ' || text[i] == '\t' || text[i] == '*')) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw InvalidInput("polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&]() -> std::string {
    std::size_t s = i;
    while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return std::string(text.substr(s, i - s));
  };
  skip();
  if (i == len) fail("empty");
  bool any_term = false;
  while (i < len) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any_term) {
      fail("expected '+' or '-' between terms");
    }
    Rational coef(1);
    bool saw_factor = false;
    if (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::string num = read_uint();
      if (i < len && text[i] == '/') {
        ++i;
        std::string den = read_uint();
        if (den.empty()) fail("missing denominator");
        num += "/" + den;
      }
      coef = parse_rational(num);
      saw_factor = true;
      skip();
    }
    Exponents e(nvars, 0);
    while (i < len && text[i] == 'x') {
      ++i;
      std::string idx = read_uint();
      if (idx.empty()) fail("variable without index");
      std::size_t v = std::stoul(idx);
      if (v < 1 || v > nvars) fail("variable x" + idx + " out of range (n = " + std::to_string(nvars) + ")");
      unsigned power = 1;
      if (i < len && text[i] == '^') {
        ++i;
        std::string pw = read_uint();
        if (pw.empty()) fail("missing exponent");
        power = static_cast<unsigned>(std::stoul(pw));
      }
      e[v - 1] += power;
      saw_factor = true;
      skip();
    }
    if (!saw_factor) fail("term without coefficient or variable");
    out += Polynomial::monomial(e, coef * sign);
    any_term = true;
    skip();
  }
  return out;
}

}  // namespace diracred::chart
