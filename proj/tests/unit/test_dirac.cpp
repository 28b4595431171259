#include <gtest/gtest.h>

#include "diracred/dirac.hpp"
#include "oracle.hpp"

using namespace diracred;
using oracle::Rows;

namespace {

Vec<Rational> gv(std::initializer_list<int> x, std::initializer_list<int> xi) {
  Vec<Rational> v;
  for (int a : x) v.emplace_back(a);
  for (int a : xi) v.emplace_back(a);
  return v;
}

QDirac graph(const QMatrix& omega) { return from_form(QSubspace::whole(omega.rows()), omega); }

// {X + xi : X in R, xi(r_j) = Omega(X, r_j)} by solving for (a, xi) with X = sum a_i r_i.
Rows<Rational> from_form_oracle(const QSubspace& r, const QMatrix& omega) {
  const std::size_t n = r.ambient_dim(), k = r.dim();
  Rows<Rational> sys;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> eq(k + n, Rational(0));
    for (std::size_t i = 0; i < k; ++i) eq[i] = omega(i, j);
    for (std::size_t c = 0; c < n; ++c) eq[k + c] = -r.basis()(j, c);
    sys.push_back(eq);
  }
  Rows<Rational> sols = oracle::kernel(sys, k + n);
  Rows<Rational> gens;
  for (const auto& s : sols) {
    std::vector<Rational> v(2 * n, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < n; ++c) v[c] += s[i] * r.basis()(i, c);
    for (std::size_t c = 0; c < n; ++c) v[n + c] = s[k + c];
    gens.push_back(v);
  }
  return oracle::rref(gens, 2 * n);
}

// {X + xi : xi = sum b_i s_i in R*, s_j(X) = -pi(xi, s_j)}.
Rows<Rational> from_bivector_oracle(const QSubspace& rs, const QMatrix& pi) {
  const std::size_t n = rs.ambient_dim(), k = rs.dim();
  Rows<Rational> sys;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> eq(k + n, Rational(0));
    for (std::size_t i = 0; i < k; ++i) eq[i] = pi(i, j);
    for (std::size_t c = 0; c < n; ++c) eq[k + c] = rs.basis()(j, c);
    sys.push_back(eq);
  }
  Rows<Rational> gens;
  for (const auto& s : oracle::kernel(sys, k + n)) {
    std::vector<Rational> v(2 * n, Rational(0));
    for (std::size_t c = 0; c < n; ++c) v[c] = s[k + c];
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < n; ++c) v[n + c] += s[i] * rs.basis()(i, c);
    gens.push_back(v);
  }
  return oracle::rref(gens, 2 * n);
}

// Constraint rows whose kernel is L (standard dot product).
Rows<Rational> equations_of(const QSubspace& l) {
  return oracle::kernel(oracle::rows_of(l), l.ambient_dim());
}

// {X + phi^T xi : (phi X, xi) in L_W}
Rows<Rational> backward_oracle(const QMatrix& phi, const QDirac& lw) {
  const std::size_t m = phi.rows(), n = phi.cols();
  Rows<Rational> eqs = equations_of(lw.space()), sys;
  for (const auto& e : eqs) {
    std::vector<Rational> row(n + m, Rational(0));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t w = 0; w < m; ++w) row[c] += e[w] * phi(w, c);
    for (std::size_t w = 0; w < m; ++w) row[n + w] = e[m + w];
    sys.push_back(row);
  }
  Rows<Rational> sols = sys.empty() ? oracle::rref(oracle::rows_of(QMatrix::identity(n + m)), n + m)
                                    : oracle::kernel(sys, n + m);
  Rows<Rational> gens;
  for (const auto& s : sols) {
    std::vector<Rational> v(2 * n, Rational(0));
    for (std::size_t c = 0; c < n; ++c) v[c] = s[c];
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t w = 0; w < m; ++w) v[n + c] += phi(w, c) * s[n + w];
    gens.push_back(v);
  }
  return oracle::rref(gens, 2 * n);
}

// {phi X + xi : (X, phi^T xi) in L_V}
Rows<Rational> forward_oracle(const QMatrix& phi, const QDirac& lv) {
  const std::size_t m = phi.rows(), n = phi.cols();
  Rows<Rational> eqs = equations_of(lv.space()), sys;
  for (const auto& e : eqs) {
    std::vector<Rational> row(n + m, Rational(0));
    for (std::size_t c = 0; c < n; ++c) row[c] = e[c];
    for (std::size_t w = 0; w < m; ++w)
      for (std::size_t c = 0; c < n; ++c) row[n + w] += e[n + c] * phi(w, c);
    sys.push_back(row);
  }
  Rows<Rational> sols = sys.empty() ? oracle::rref(oracle::rows_of(QMatrix::identity(n + m)), n + m)
                                    : oracle::kernel(sys, n + m);
  Rows<Rational> gens;
  for (const auto& s : sols) {
    std::vector<Rational> v(2 * m, Rational(0));
    for (std::size_t w = 0; w < m; ++w)
      for (std::size_t c = 0; c < n; ++c) v[w] += phi(w, c) * s[c];
    for (std::size_t w = 0; w < m; ++w) v[m + w] = s[n + w];
    gens.push_back(v);
  }
  return oracle::rref(gens, 2 * m);
}

QDirac random_dirac(RandomExact& rnd, std::size_t n) {
  QSubspace r = rnd.subspace(n, static_cast<std::size_t>(rnd.uniform_int(0, int(n))));
  return from_form(r, rnd.skew(r.dim()));
}

}  // namespace

TEST(Pairing, Values) {
  EXPECT_EQ(pairing(gv({1}, {1}), gv({1}, {1})), Rational(1));
  EXPECT_EQ(pairing(gv({1}, {1}), gv({1}, {-1})), Rational(0));
}

TEST(Pairing, MatchesGramMatrix) {
  RandomExact rnd(21);
  QMatrix q{{0, 0, 0, Rational(1, 2), 0, 0}, {0, 0, 0, 0, Rational(1, 2), 0}, {0, 0, 0, 0, 0, Rational(1, 2)},
            {Rational(1, 2), 0, 0, 0, 0, 0}, {0, Rational(1, 2), 0, 0, 0, 0}, {0, 0, Rational(1, 2), 0, 0, 0}};
  for (int t = 0; t < 30; ++t) {
    Vec<Rational> v = rnd.vector(6), w = rnd.vector(6);
    EXPECT_EQ(pairing(v, w), dot(v, q.apply(w)));
    EXPECT_EQ(pairing(v, w), pairing(w, v));
  }
}

TEST(FromForm, Extremes) {
  EXPECT_EQ(from_form(QSubspace::whole(3), QMatrix(3, 3)), QDirac::tangent(3));
  EXPECT_EQ(from_form(QSubspace::zero(3), QMatrix(0, 0)), QDirac::cotangent(3));
}

TEST(FromForm, PlaneExample) {
  QDirac l = graph(QMatrix{{0, 1}, {-1, 0}});
  QSubspace expect = QSubspace::span(std::vector<Vec<Rational>>{gv({1, 0}, {0, 1}), gv({0, 1}, {-1, 0})}, 4);
  EXPECT_EQ(l.space(), expect);
  EXPECT_EQ(oracle::rows_of(l.space()), from_form_oracle(QSubspace::whole(2), QMatrix{{0, 1}, {-1, 0}}));
}

TEST(FromForm, RejectsNonSkew) {
  EXPECT_THROW(from_form(QSubspace::whole(2), QMatrix{{1, 0}, {0, 0}}), InvalidInput);
  EXPECT_THROW(from_form(QSubspace::whole(2), QMatrix(3, 3)), InvalidInput);
}

TEST(FromBivector, Extremes) {
  EXPECT_EQ(from_bivector(QSubspace::zero(2), QMatrix(0, 0)), QDirac::tangent(2));
  EXPECT_EQ(from_bivector(QSubspace::whole(2), QMatrix(2, 2)), QDirac::cotangent(2));
  EXPECT_THROW(from_bivector(QSubspace::whole(2), QMatrix{{0, 1}, {1, 0}}), InvalidInput);
}

TEST(FromBivector, PlaneExampleAgreesWithInverseForm) {
  QMatrix pi{{0, 1}, {-1, 0}};
  QDirac l = from_bivector(QSubspace::whole(2), pi);
  EXPECT_EQ(oracle::rows_of(l.space()), from_bivector_oracle(QSubspace::whole(2), pi));
  EXPECT_EQ(l, from_form(QSubspace::whole(2), QMatrix(-inverse(pi))));
}

TEST(FromBivector, RandomMatchesOracle) {
  RandomExact rnd(22);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4;
    QSubspace rs = rnd.subspace(n, static_cast<std::size_t>(rnd.uniform_int(0, 4)));
    QMatrix pi = rnd.skew(rs.dim());
    QDirac l = from_bivector(rs, pi);
    EXPECT_EQ(oracle::rows_of(l.space()), from_bivector_oracle(rs, pi));
    EXPECT_EQ(l.corange(), rs);
    BivectorPresentation<Rational> back = to_bivector(l);
    EXPECT_EQ(back.corange, rs);
    EXPECT_EQ(back.pi, pi);
  }
}

TEST(ToForm, RoundTrips) {
  auto t = to_form(QDirac::tangent(2));
  EXPECT_EQ(t.range, QSubspace::whole(2));
  EXPECT_TRUE(t.omega.is_zero());
  QMatrix w{{0, 2, 1}, {-2, 0, 0}, {-1, 0, 0}};
  auto p = to_form(graph(w));
  EXPECT_EQ(p.omega, w);

  RandomExact rnd(23);
  for (int i = 0; i < 40; ++i) {
    QSubspace r = rnd.subspace(3, static_cast<std::size_t>(rnd.uniform_int(0, 3)));
    QMatrix om = rnd.skew(r.dim());
    QDirac l = from_form(r, om);
    EXPECT_EQ(oracle::rows_of(l.space()), from_form_oracle(r, om));
    EXPECT_EQ(l.range(), r);
    auto fp = to_form(l);
    EXPECT_EQ(fp.range, r);
    EXPECT_EQ(fp.omega, om);
    EXPECT_EQ(from_form(fp.range, fp.omega), l);
  }
}

TEST(Backward, Examples) {
  QMatrix incl{{1}, {0}};
  QDirac lw = graph(QMatrix{{0, 1}, {-1, 0}});
  EXPECT_EQ(backward(incl, lw), QDirac::tangent(1));
  EXPECT_EQ(oracle::rows_of(backward(incl, lw).space()), backward_oracle(incl, lw));
  EXPECT_EQ(backward(QMatrix::identity(2), lw), lw);
  EXPECT_THROW(backward(QMatrix(3, 2), lw), InvalidInput);
}

TEST(Backward, CotangentGivesKernelPlusImage) {
  RandomExact rnd(24);
  for (int t = 0; t < 30; ++t) {
    QMatrix phi = rnd.matrix(3, 2);
    if (t % 3 == 0) phi = QMatrix{{1, 2}, {2, 4}, {0, 0}};
    QDirac b = backward(phi, QDirac::cotangent(3));
    QSubspace kerphi = null_space(phi);
    QSubspace im_t = image(phi.transpose());
    EXPECT_EQ(b.space(), direct_sum(kerphi, im_t));
    EXPECT_EQ(oracle::rows_of(b.space()), backward_oracle(phi, QDirac::cotangent(3)));
    // and the annihilator exchange
    EXPECT_EQ(im_t, annihilator(kerphi));
    EXPECT_EQ(backward(phi, QDirac::tangent(3)), QDirac::tangent(2));
    QSubspace imphi = image(phi);
    EXPECT_EQ(forward(phi, QDirac::tangent(2)).space(), direct_sum(imphi, annihilator(imphi)));
  }
}

TEST(Forward, Examples) {
  QMatrix proj{{1, 0}};
  EXPECT_EQ(forward(proj, QDirac::tangent(2)), QDirac::tangent(1));
  QDirac l = graph(QMatrix{{0, 1}, {-1, 0}});
  EXPECT_EQ(forward(QMatrix::identity(2), l), l);
  EXPECT_EQ(forward(proj, l), QDirac::cotangent(1));
  EXPECT_EQ(oracle::rows_of(forward(proj, l).space()), forward_oracle(proj, l));
}

TEST(BackwardForward, RandomMatchOracles) {
  RandomExact rnd(25);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(rnd.uniform_int(1, 3));
    const std::size_t m = static_cast<std::size_t>(rnd.uniform_int(1, 3));
    QMatrix phi = rnd.matrix(m, n);
    QDirac lw = random_dirac(rnd, m), lv = random_dirac(rnd, n);
    EXPECT_EQ(oracle::rows_of(backward(phi, lw).space()), backward_oracle(phi, lw));
    EXPECT_EQ(oracle::rows_of(forward(phi, lv).space()), forward_oracle(phi, lv));
  }
}

TEST(BackwardForward, Functoriality) {
  RandomExact rnd(26);
  for (int t = 0; t < 60; ++t) {
    auto dim = [&] { return static_cast<std::size_t>(rnd.uniform_int(1, 4)); };
    const std::size_t a = dim(), b = dim(), c = dim();
    QMatrix psi = rnd.matrix(b, a);  // A -> B
    QMatrix phi = rnd.matrix(c, b);  // B -> C
    QDirac lc = random_dirac(rnd, c), la = random_dirac(rnd, a);
    EXPECT_EQ(backward(QMatrix(phi * psi), lc), backward(psi, backward(phi, lc)));
    EXPECT_EQ(forward(QMatrix(phi * psi), la), forward(phi, forward(psi, la)));
  }
}

TEST(BackwardForward, GraphLaw) {
  RandomExact rnd(27);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rnd.uniform_int(1, 4));
    const std::size_t m = static_cast<std::size_t>(rnd.uniform_int(1, 4));
    QMatrix phi = rnd.matrix(m, n);
    QMatrix om = rnd.skew(m);
    QDirac lw = graph(om);
    QMatrix pulled = phi.transpose() * om * phi;  // (phi^* Omega)(X, Y) = Omega(phi X, phi Y)
    EXPECT_EQ(backward(phi, lw), graph(pulled));
    EXPECT_EQ(pullback_form(phi, QSubspace::whole(n), to_form(lw)), pulled);
  }
}

TEST(BackwardForward, SurjectiveForwardMatchesBivectorPresentation) {
  RandomExact rnd(28);
  for (int t = 0; t < 30; ++t) {
    QMatrix phi;
    do phi = rnd.matrix(2, 3);
    while (rank(phi) < 2);
    QSubspace rs = rnd.subspace(3, static_cast<std::size_t>(rnd.uniform_int(0, 3)));
    QDirac lv = from_bivector(rs, rnd.skew(rs.dim()));
    QDirac fw = forward(phi, lv);
    // rho*(forward) = (phi^*)^{-1}(rho*(L_V))
    EXPECT_EQ(fw.corange(), preimage(phi.transpose(), lv.corange()));
    // pi_W(xi, eta) = pi_V(phi^* xi, phi^* eta)
    auto bw = to_bivector(fw);
    auto bv = to_bivector(lv);
    for (std::size_t i = 0; i < bw.corange.dim(); ++i)
      for (std::size_t j = 0; j < bw.corange.dim(); ++j) {
        Vec<Rational> xi = phi.transpose().apply(bw.corange.basis().row(i));
        Vec<Rational> eta = phi.transpose().apply(bw.corange.basis().row(j));
        auto ci = solve(bv.corange.basis().transpose(), xi);
        auto cj = solve(bv.corange.basis().transpose(), eta);
        ASSERT_TRUE(ci && cj);
        EXPECT_EQ(bw.pi(i, j), dot(*ci, bv.pi.apply(*cj)));
      }
  }
}

TEST(DiracStructure, RejectsNonMaximalOrNonIsotropic) {
  EXPECT_THROW(QDirac(QSubspace::coordinate(4, {0})), InvalidInput);
  EXPECT_THROW(QDirac(QSubspace::coordinate(4, {0, 2})), InvalidInput);
}
