#include <gtest/gtest.h>

#include "closed_forms.hpp"
#include "support.hpp"

using namespace charge_ladder;
using namespace charge_ladder::testing;

TEST(BakerAkhiezer, SmallCases) {
  const auto f0 = ba_lambda1(0, Q(3), {});
  EXPECT_EQ(f0.p, P({1}));
  EXPECT_EQ(f0.q, P({1}));
  for (const Rational& k : {Q(1), Q(2), Q(1, 2), Q(-3)}) {
    const auto f1 = ba_lambda1(1, k, {});
    EXPECT_EQ(f1.p, tables::coeffs({-1, k}));
    EXPECT_EQ(f1.q, Z());
  }
  EXPECT_THROW(ba_lambda1(2, Q(0), {}), FieldRequired);
}

TEST(BakerAkhiezer, FieldBracketVanishes) {
  Rng rng(31);
  for (const Rational& k : {Q(1), Q(2), Q(1, 2)})
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<std::pair<Rational, Rational>> psi;
      if (trial == 1)
        for (int m = 2; m <= 4; ++m) psi.emplace_back(rng.rational(), rng.rational());
      for (int n = 0; n <= 4; ++n) {
        const auto f = ba_lambda1(n, k, psi);
        EXPECT_TRUE(bilinear_field_check(f).is_zero()) << n;
        EXPECT_EQ(f.q, adler_moser_wronskian(n, psi));
        EXPECT_EQ(f.p.degree(), f.q.degree());
      }
    }
}

TEST(BakerAkhiezer, SchrodingerFormAtSamplePoints) {
  // psi = (p/q) e^{kz} solves psi'' + 2 (log q)'' psi = k^2 psi. With
  // u = p/q this reads u'' + 2k u' + 2 (log q)'' u = 0; checked at rational points.
  const Rational k = Q(2);
  const auto f = ba_lambda1(3, k, {{Q(1), Q(-1)}, {Q(2), Q(1, 3)}});
  const ExactPoly& p = f.p;
  const ExactPoly& q = f.q;
  for (const Rational& x : {Q(1, 3), Q(-2), Q(5, 7)}) {
    const Rational q0 = evaluate(q, x), q1 = evaluate(derivative(q), x), q2 = evaluate(derivative(q, 2), x);
    const Rational p0 = evaluate(p, x), p1 = evaluate(derivative(p), x), p2 = evaluate(derivative(p, 2), x);
    if (q0 == 0) continue;
    const Rational u = p0 / q0;
    const Rational u1 = (p1 * q0 - p0 * q1) / (q0 * q0);
    const Rational u2 = (p2 * q0 * q0 - 2 * p1 * q1 * q0 - p0 * q2 * q0 + 2 * p0 * q1 * q1) / (q0 * q0 * q0);
    const Rational logq2 = (q2 * q0 - q1 * q1) / (q0 * q0);
    EXPECT_EQ(u2 + 2 * k * u1 + 2 * logq2 * u, Q(0));
  }
}

TEST(BilinearFieldCheck, Examples) {
  EXPECT_TRUE(bilinear_field_check({tables::coeffs({-1, Q(3)}), Z(), Q(3), Q(1)}).is_zero());
  EXPECT_TRUE(bilinear_field_check({tables::field_p1(), tables::field_q1(), Q(1), Q(2)}).is_zero());
  EXPECT_FALSE(bilinear_field_check({Z(), Z(), Q(1), Q(1)}).is_zero());
}

TEST(SolveField, ClosedFormExamples) {
  const auto r1 = solve_p_given_q(tables::field_q1());
  ASSERT_TRUE(r1.solved());
  EXPECT_EQ(*r1.p, tables::field_p1());
  EXPECT_EQ(r1.free_parameters, 0u);

  const auto r2 = solve_p_given_q(P({0, 2, 0, 1}));
  ASSERT_TRUE(r2.solved());
  EXPECT_EQ(*r2.p, P({48, -48, 112, -96, 40, -9, 1}));

  const auto r3 = solve_p_given_q(P({0, 1, 1, 1}));
  EXPECT_FALSE(r3.solved());
  EXPECT_FALSE(r3.p.has_value());
}

TEST(SolveField, FamilyAtSeveralParameters) {
  for (const Rational& t : {Q(-2), Q(-1), Q(0), Q(1), Q(2), Q(1, 3)}) {
    const ExactPoly q = tables::field_q2(t);
    EXPECT_EQ(q, field_family_q2(t));
    const auto r = solve_p_given_q(q);
    ASSERT_TRUE(r.solved()) << t;
    EXPECT_EQ(*r.p, tables::field_p2(t)) << t;
    EXPECT_EQ(r.p->degree(), 2 * q.degree());
    EXPECT_TRUE(bracket(*r.p, q, BracketParams(Q(2), Q(1))).is_zero());
  }
}

TEST(SolveField, RandomCubicsAreIncompatible) {
  // Off the one-parameter family, z^3 + a z^2 + b z admits no partner.
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational a = rng.rational(), b = rng.rational();
    if (b == (a * a + 6) / 3) continue;
    EXPECT_FALSE(solve_p_given_q(tables::coeffs({0, b, a, 1})).solved());
  }
}

TEST(SolveField, OtherFieldStrengths) {
  // q = z at field k: p = k^2 z^2 - 3k z + 3 up to normalization.
  for (const Rational& k : {Q(2), Q(1, 3), Q(-1)}) {
    const auto r = solve_p_given_q(Z(), Q(2), k);
    ASSERT_TRUE(r.solved());
    EXPECT_EQ(*r.p, make_monic(tables::coeffs({3, -3 * k, k * k})));
  }
  EXPECT_THROW(solve_p_given_q(P({0, 0, 1})), NotSquarefree);
  EXPECT_THROW(solve_p_given_q(Z(), Q(2), Q(0)), FieldRequired);
}

TEST(ScaleSubstitute, PreservesBracketAndIsAGroupAction) {
  const FieldPair base{tables::field_p1(), tables::field_q1(), Q(1), Q(2)};
  const auto at2 = scale_substitute(base, Q(2));
  EXPECT_EQ(at2.p, P({3, -6, 4}));
  EXPECT_EQ(at2.q, P({0, 2}));
  EXPECT_EQ(at2.k, Q(2));
  EXPECT_TRUE(bilinear_field_check(at2).is_zero());

  const auto back = scale_substitute(at2, Q(1));
  EXPECT_EQ(back.p, base.p);
  EXPECT_EQ(back.q, base.q);

  const auto same = scale_substitute(base, Q(1));
  EXPECT_EQ(same.p, base.p);

  // (kz - 1, z) at new_k = 1 is (z - 1, z) up to a constant factor.
  const auto ba = scale_substitute(ba_lambda1(1, Q(3), {}), Q(1));
  EXPECT_EQ(make_monic(ba.p), P({-1, 1}));
  EXPECT_EQ(make_monic(ba.q), Z());
  EXPECT_TRUE(bilinear_field_check(ba).is_zero());

  for (const Rational& t : {Q(1), Q(-1, 2)}) {
    const FieldPair fam{tables::field_p2(t), tables::field_q2(t), Q(1), Q(2)};
    EXPECT_TRUE(bilinear_field_check(scale_substitute(fam, Q(5, 3))).is_zero());
  }
  EXPECT_THROW(scale_substitute(base, Q(0)), FieldRequired);
}

TEST(Homogeneity, AdlerMoserWeightsAreFound) {
  // theta_2 = z^3 + t: weight 3 for t.
  const auto table = tabulate_family([](const Rational& t) { return tables::theta2(t); }, 1);
  EXPECT_EQ(homogeneous_weights(table, 1, 9), std::vector<int>{3});
}

TEST(Homogeneity, FieldFamilyHasNoWeight) {
  const auto qt = tabulate_family([](const Rational& t) { return field_family_q2(t); }, 2);
  EXPECT_TRUE(homogeneous_weights(qt, 1, 9).empty());
  const auto pt = tabulate_family([](const Rational& t) { return *solve_p_given_q(field_family_q2(t)).p; }, 4);
  EXPECT_TRUE(homogeneous_weights(pt, 1, 9).empty());
  // The tabulated coefficients agree with the closed form.
  for (const Rational& t : {Q(3, 2), Q(-4)}) {
    for (std::size_t a = 0; a < pt.by_z_degree.size(); ++a)
      EXPECT_EQ(evaluate(pt.by_z_degree[a], t), tables::field_p2(t).coeff(a));
  }
}
