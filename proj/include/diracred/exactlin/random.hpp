#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "diracred/exactlin/subspace.hpp"

namespace diracred {

/// Seedable generator for random exact instances.
///
/// Entries are p/q with p uniform in {-3,...,3} and q uniform in {1,2,3}.
class RandomExact {
 public:
  explicit RandomExact(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  Rational scalar() {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    Rational q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
  }
  Rational nonzero_scalar() {
    Rational q;
    do q = scalar();
    while (sgn(q) == 0);
    return q;
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform_int(0, 1) == 1; }

  QMatrix matrix(std::size_t rows, std::size_t cols) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar();
    return m;
  }
  Vec<Rational> vector(std::size_t n) {
    Vec<Rational> v(n);
    for (auto& x : v) x = scalar();
    return v;
  }
  QMatrix skew(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = scalar();
        m(j, i) = -m(i, j);
      }
    return m;
  }
  QMatrix invertible(std::size_t n) {
    for (;;) {
      QMatrix m = matrix(n, n);
      if (is_invertible(m)) return m;
    }
  }
  /// Symplectic (skew, invertible) n x n; n must be even.
  QMatrix symplectic(std::size_t n) {
    for (;;) {
      QMatrix m = skew(n);
      if (is_invertible(m)) return m;
    }
  }
  /// Random subspace of dimension exactly k in Q^n.
  QSubspace subspace(std::size_t n, std::size_t k) {
    for (;;) {
      QSubspace s = QSubspace::span(matrix(k, n));
      if (s.dim() == k) return s;
    }
  }
  /// Random subspace of dimension exactly k inside `outer`.
  QSubspace subspace_of(const QSubspace& outer, std::size_t k) {
    for (;;) {
      QSubspace s = QSubspace::span(matrix(k, outer.dim()) * outer.basis());
      if (s.dim() == k) return s;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace diracred
