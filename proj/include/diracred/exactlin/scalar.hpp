#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include "diracred/errors.hpp"

namespace diracred {

/// Exact rational number. GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Gaussian rational a + b i with a, b in Q.
class Complex {
 public:
  Complex() = default;
  Complex(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit Q -> Q(i)
  Complex(int re) : re_(re) {}                   // NOLINT
  Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Complex i() { return Complex(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_real() const { return sgn(im_) == 0; }

  Complex conj() const { return Complex(re_, -im_); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    if (sgn(o.im_) == 0) {
      if (sgn(o.re_) == 0) throw InvalidInput("division by zero");
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational den = o.re_ * o.re_ + o.im_ * o.im_;
    Rational r = (re_ * o.re_ + im_ * o.im_) / den;
    Rational m = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im); only used to order witnesses deterministically.
  friend std::strong_ordering operator<=>(const Complex& a, const Complex& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

template <class F>
concept ExactField = std::same_as<F, Rational> || std::same_as<F, Complex>;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return sgn(x.re()) == 0 && sgn(x.im()) == 0; }

inline Rational conj(const Rational& x) { return x; }
inline Complex conj(const Complex& x) { return x.conj(); }

template <ExactField F>
constexpr const char* field_name() {
  if constexpr (std::same_as<F, Rational>) {
    return "Q";
  } else {
    return "Q(i)";
  }
}

/// Lexicographic comparison helper for rationals.
inline std::strong_ordering scalar_order(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}
inline std::strong_ordering scalar_order(const Complex& a, const Complex& b) { return a <=> b; }

// Serialization: "p/q" (integers print as "p") and "p/q+r/s i" / "p/q-r/s i".

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline std::string to_string(const Complex& x) {
  std::string s = x.re().get_str();
  if (x.is_real()) return s;
  if (sgn(x.im()) < 0) {
    s += "-";
    s += Rational(-x.im()).get_str();
  } else {
    s += "+";
    s += x.im().get_str();
  }
  s += " i";
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Complex& x) { return os << to_string(x); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline Rational parse_rational_strict(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) throw InvalidInput("empty rational literal");
  std::string buf(t);
  if (buf.front() == '+') buf.erase(buf.begin());
  for (char c : buf) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      throw InvalidInput("malformed rational literal '" + std::string(t) + "'");
    }
  }
  Rational q;
  if (q.set_str(buf, 10) != 0) throw InvalidInput("malformed rational literal '" + std::string(t) + "'");
  if (sgn(q.get_den()) == 0) throw InvalidInput("zero denominator in '" + std::string(t) + "'");
  q.canonicalize();
  return q;
}

}  // namespace detail

inline Rational parse_rational(std::string_view text) { return detail::parse_rational_strict(text); }

/// Accepts "p/q", "r/s i", "p/q+r/s i", "p/q-r/s i".
inline Complex parse_complex(std::string_view text) {
  std::string_view t = detail::trim(text);
  if (t.size() >= 1 && t.back() == 'i') {
    std::string_view body = detail::trim(t.substr(0, t.size() - 1));
    // split at the last sign that is not the leading one
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    }
    if (split == std::string_view::npos) {
      std::string_view im = body.empty() ? std::string_view("1") : body;
      return Complex(Rational(0), detail::parse_rational_strict(im));
    }
    std::string_view re = body.substr(0, split);
    std::string im(body.substr(split));
    if (im == "+" || im == "-") im += "1";
    return Complex(detail::parse_rational_strict(re), detail::parse_rational_strict(im));
  }
  return Complex(detail::parse_rational_strict(t));
}

template <ExactField F>
F parse_scalar(std::string_view text) {
  if constexpr (std::same_as<F, Rational>) {
    return parse_rational(text);
  } else {
    return parse_complex(text);
  }
}

}  // namespace diracred
