#include <gtest/gtest.h>

#include "diracred/kahler.hpp"
#include "generators.hpp"

using namespace diracred;

namespace {

QSubspace coord(std::size_t n, std::vector<std::size_t> idx) { return QSubspace::coordinate(n, idx); }

const QMatrix kJ2{{0, -1}, {1, 0}};  // e1 -> e2
const QMatrix kOmega2{{0, 1}, {-1, 0}};

QMatrix e34_form() {
  QMatrix b(4, 4);
  b(2, 3) = 1;
  b(3, 2) = -1;
  return b;
}

GualtieriQuadruple kahler4(QMatrix b) {
  return GualtieriQuadruple(QMatrix::identity(4), std::move(b), gen::standard_j(4), gen::standard_j(4));
}

GKDatum kahler4_datum(QMatrix b = QMatrix(4, 4)) {
  return GKDatum(from_quadruple(kahler4(std::move(b))), coord(4, {0, 2, 3}), coord(4, {0}));
}

}  // namespace

TEST(Positivity, WitnessIsNonPositive) {
  RandomExact rnd(51);
  for (int t = 0; t < 80; ++t) {
    QMatrix m = rnd.matrix(4, 4);
    QMatrix g = m + m.transpose();
    PositivityResult p = positivity(g);
    EXPECT_EQ(p.positive, is_positive_definite(g));
    if (!p.positive) {
      ASSERT_TRUE(p.witness.has_value());
      EXPECT_LE(sgn(dot(*p.witness, g.apply(*p.witness))), 0);
    }
  }
}

TEST(IsGeneralizedKahler, PlanePair) {
  // Under the fixed interior-product sign the compatible pair is (symplectic(g j), complex(j)).
  GCStructure c = from_complex(kJ2);
  GCStructure s = from_symplectic(QMatrix(kJ2));  // g j with g = I: the form -e1*^e2*
  EXPECT_TRUE(is_generalized_kahler(s, c).ok());
  EXPECT_TRUE(is_generalized_kahler(c, s).ok());
  // The opposite orientation commutes but is negative definite.
  GKDiagnostics d = is_generalized_kahler(from_symplectic(kOmega2), c);
  EXPECT_TRUE(d.commute);
  EXPECT_FALSE(d.ok());
  EXPECT_EQ(d.failed, "positivity");
}

TEST(IsGeneralizedKahler, SameStructureTwiceFails) {
  GCStructure s = from_symplectic(kOmega2);
  GKDiagnostics d = is_generalized_kahler(s, s);
  EXPECT_FALSE(d.ok());
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_LE(sgn(dot(*d.witness, gk_gram(s, s).apply(*d.witness))), 0);
  EXPECT_THROW(GKPair(s, s), InvalidInput);
}

TEST(IsGeneralizedKahler, NonCommutingHasWitness) {
  GCStructure a = from_complex(gen::standard_j(4));
  // e1*^e2* + e2*^e4* + e3*^e4*: not j-invariant
  GCStructure b = from_symplectic(QMatrix{{0, 1, 0, 0}, {-1, 0, 0, 1}, {0, 0, 0, 1}, {0, -1, -1, 0}});
  GKDiagnostics d = is_generalized_kahler(a, b);
  EXPECT_FALSE(d.commute);
  EXPECT_EQ(d.failed, "commutation");
  ASSERT_TRUE(d.witness.has_value());
  QMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  EXPECT_FALSE(is_zero_vector(comm.apply(*d.witness)));
  EXPECT_THROW(is_generalized_kahler(a, from_complex(kJ2)), InvalidInput);
}

TEST(IsGeneralizedKahler, RandomCommutingPairFailingPositivity) {
  // (J1, -J2) of a valid pair commutes and flips the sign of the form.
  RandomExact rnd(52);
  for (int t = 0; t < 20; ++t) {
    GKPair p = from_quadruple(gen::random_quadruple(rnd, 2 * static_cast<std::size_t>(rnd.uniform_int(1, 2))));
    GCStructure neg(QMatrix(-p.j2.matrix()));
    GKDiagnostics d = is_generalized_kahler(p.j1, neg);
    EXPECT_TRUE(d.commute);
    EXPECT_FALSE(d.positive);
    ASSERT_TRUE(d.witness.has_value());
    EXPECT_LE(sgn(dot(*d.witness, gk_gram(p.j1, neg).apply(*d.witness))), 0);
  }
}

TEST(Quadruple, FlatRecovery) {
  GKPair p = from_quadruple(GualtieriQuadruple(QMatrix::identity(2), QMatrix(2, 2), kJ2, kJ2));
  EXPECT_TRUE(p.same_as(from_complex(kJ2), from_symplectic(QMatrix(QMatrix::identity(2) * kJ2))));
  EXPECT_EQ(p.j1, from_complex(kJ2));
}

TEST(Quadruple, RecoveryWithMetric) {
  RandomExact rnd(53);
  for (int t = 0; t < 20; ++t) {
    GualtieriQuadruple q0 = gen::random_quadruple(rnd, 4, false);
    GualtieriQuadruple q(q0.g, QMatrix(4, 4), q0.j_plus, q0.j_plus);
    GKPair p = from_quadruple(q);
    EXPECT_TRUE(p.same_as(from_complex(q.j_plus), from_symplectic(QMatrix(q.g * q.j_plus))));
  }
}

TEST(Quadruple, BEntersByShear) {
  RandomExact rnd(54);
  for (int t = 0; t < 20; ++t) {
    GualtieriQuadruple q = gen::random_quadruple(rnd, 4);
    GualtieriQuadruple q0(q.g, QMatrix(4, 4), q.j_plus, q.j_minus);
    GKPair with_b = from_quadruple(q), without = from_quadruple(q0);
    EXPECT_EQ(with_b.j1, b_transform(without.j1, q.b));
    EXPECT_EQ(with_b.j2, b_transform(without.j2, q.b));
  }
}

TEST(Quadruple, RandomAlwaysGeneralizedKahler) {
  RandomExact rnd(55);
  for (int t = 0; t < 60; ++t) {
    GualtieriQuadruple q = gen::random_quadruple(rnd, 2 * static_cast<std::size_t>(rnd.uniform_int(1, 2)));
    GKPair p = from_quadruple(q);
    EXPECT_EQ(p.j1.matrix() * p.j2.matrix(), p.j2.matrix() * p.j1.matrix());
    EXPECT_TRUE(is_generalized_kahler(p.j1, p.j2).ok());
  }
}

TEST(Quadruple, RejectsInvalid) {
  EXPECT_THROW(GualtieriQuadruple(QMatrix{{1, 0}, {0, -1}}, QMatrix(2, 2), kJ2, kJ2), InvalidInput);
  EXPECT_THROW(GualtieriQuadruple(QMatrix::identity(2), QMatrix::identity(2), kJ2, kJ2), InvalidInput);
  EXPECT_THROW(GualtieriQuadruple(QMatrix::identity(2), QMatrix(2, 2), QMatrix{{0, -2}, {Rational(1, 2), 0}}, kJ2),
               InvalidInput);
}

TEST(GKCheck, Kahler4) {
  GKConditionReport rep = gk_check(kahler4_datum());
  EXPECT_TRUE(rep.surjective);
  EXPECT_TRUE(rep.direct);
  for (const auto& s : rep.phi_summands) EXPECT_EQ(s.dim(), 1u);
  EXPECT_FALSE(rep.missing.has_value());
}

TEST(GKCheck, TrivialReduction) {
  GKPair p = from_quadruple(kahler4(QMatrix(4, 4)));
  GKConditionReport rep = gk_check(GKDatum(p, QSubspace::whole(4), QSubspace::zero(4)));
  EXPECT_EQ(rep.quad_dim, 8u);
  EXPECT_TRUE(rep.surjective);
}

TEST(GKCheck, IncompatibleW0) {
  GKPair p = from_quadruple(kahler4(QMatrix(4, 4)));
  GKDatum d(p, coord(4, {0, 1, 2}), coord(4, {0}));
  GKConditionReport rep = gk_check(d);
  EXPECT_FALSE(rep.surjective);
  ASSERT_TRUE(rep.missing.has_value());
  ProjectionPi pi = projection_pi(d.component(1));
  EXPECT_FALSE(pi.apply(quad_intersection(d)).contains(*rep.missing));
  EXPECT_THROW(gk_reduce(d), GKReductionObstructed);
}

TEST(GKReduce, Kahler4) {
  GKDatum d = kahler4_datum();
  ReducedGKPair red = gk_reduce(d);
  EXPECT_TRUE(red.pair.same_as(from_symplectic(kJ2), from_complex(kJ2)));
  EXPECT_EQ(red.pair.j1, reduce(d.component(1)).j_g);
  EXPECT_EQ(red.pair.j2, reduce(d.component(2)).j_g);
  EXPECT_TRUE(is_generalized_kahler(red.pair.j1, red.pair.j2).ok());
}

TEST(GKReduce, TrivialIsIdentity) {
  GKPair p = from_quadruple(kahler4(e34_form()));
  ReducedGKPair red = gk_reduce(GKDatum(p, QSubspace::whole(4), QSubspace::zero(4)));
  EXPECT_EQ(red.pair.j1, p.j1);
  EXPECT_EQ(red.pair.j2, p.j2);
}

TEST(GKReduce, RandomPassingDataStayPositive) {
  RandomExact rnd(56);
  int reduced = 0;
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 2 * static_cast<std::size_t>(rnd.uniform_int(1, 2));
    GKPair p = from_quadruple(gen::random_quadruple(rnd, n));
    ReductionDatum shape = gen::random_datum(rnd, n);
    GKDatum d(p, shape.w0, shape.f);
    GKConditionReport rep = gk_check(d);
    QSubspace k4 = quad_intersection(d);
    if (!rep.surjective) continue;
    ++reduced;
    ReducedGKPair red = gk_reduce(d);
    EXPECT_TRUE(positivity(gk_gram(red.pair.j1, red.pair.j2)).positive);
    EXPECT_EQ(red.pair.j1, reduce(d.component(1)).j_g);
    EXPECT_EQ(red.pair.j2, reduce(d.component(2)).j_g);
    for (const auto& w : k4.basis_vectors()) {
      EXPECT_EQ(red.pi.apply(p.j1.apply(w)), red.pair.j1.apply(red.pi.apply(w)));
      EXPECT_EQ(red.pi.apply(p.j2.apply(w)), red.pair.j2.apply(red.pi.apply(w)));
    }
  }
  EXPECT_GT(reduced, 20);
}

TEST(FinalTheorem, Kahler4) {
  EXPECT_TRUE(check_final_theorem(kahler4(QMatrix(4, 4)), coord(4, {0, 2, 3}), coord(4, {0})));
  EXPECT_TRUE(check_final_theorem(kahler4(e34_form()), coord(4, {0, 2, 3}), coord(4, {0})));
  // omega_+/-(span e1) = span e2* = W0^0
  GualtieriQuadruple q = kahler4(QMatrix(4, 4));
  for (int s : {+1, -1}) EXPECT_EQ(image(flat(q.omega(s)), coord(4, {0})), coord(4, {1}));
  // the b = e3*^e4* stability: omega^{-1} b preserves span{e3, e4}
  GualtieriQuadruple qb = kahler4(e34_form());
  for (int s : {+1, -1})
    EXPECT_TRUE(coord(4, {2, 3}).contains(image(QMatrix(inverse(flat(qb.omega(s))) * flat(qb.b)), coord(4, {2, 3}))));
  EXPECT_TRUE(gk_check(kahler4_datum(e34_form())).surjective);
}

TEST(FinalTheorem, FailsWhenW0IsNotOmegaOrthogonal) {
  EXPECT_FALSE(check_final_theorem(kahler4(QMatrix(4, 4)), coord(4, {0, 1, 2}), coord(4, {0})));
  EXPECT_FALSE(check_final_theorem(kahler4(QMatrix(4, 4)), QSubspace::whole(4), coord(4, {0})));
}

TEST(FinalTheorem, RandomImpliesReduction) {
  RandomExact rnd(57);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 * static_cast<std::size_t>(rnd.uniform_int(1, 2));
    GualtieriQuadruple q = gen::random_quadruple(rnd, n, rnd.coin());
    // momentum-style data: F random, W0 = the omega_+ orthogonal of F
    QSubspace f = rnd.subspace(n, static_cast<std::size_t>(rnd.uniform_int(0, int(n) / 2)));
    QSubspace w0 = annihilator(image(flat(q.omega(+1)), f));
    if (!w0.contains(f)) continue;
    if (!check_final_theorem(q, w0, f)) continue;
    ++hits;
    GKDatum d(from_quadruple(q), w0, f);
    EXPECT_NO_THROW(gk_reduce(d));
  }
  EXPECT_GT(hits, 5);
}
