#include <gtest/gtest.h>

#include <random>

#include "fesenko/error.hpp"
#include "fesenko/tgroup.hpp"
#include "fesenko/word.hpp"
#include "naive_oracle.hpp"

using namespace fesenko;

namespace {

TElement random_element(const GroupParams& params, int min_depth, std::mt19937_64& rng) {
  std::vector<std::pair<int, long long>> terms;
  terms.emplace_back(min_depth, 1 + static_cast<long long>(rng() % (params.p() - 1)));
  for (int k = min_depth + 1; k < params.nt(); ++k) terms.emplace_back(k, static_cast<long long>(rng() % params.p()));
  return TElement::from_terms(params, terms);
}

}  // namespace

TEST(GroupParams, Validation) {
  const GroupParams g(3, 2, 20);
  EXPECT_EQ(g.q(), 9);
  EXPECT_EQ(g.ns(), 180);
  EXPECT_EQ(g.stable_below(), 11);
  EXPECT_THROW(GroupParams(4, 1, 20), Error);
  EXPECT_THROW(GroupParams(3, 0, 20), Error);
  EXPECT_THROW(GroupParams(3, 1, 3), Error);
  EXPECT_EQ(to_json(g)["NS"], 180);
}

TEST(TGroup, MakeTExamples) {
  const GroupParams p31(3, 1, 10);
  const TElement u = make_t(Series::from_terms(FieldPrime(3), p31.ns(), {{4, 1}}), p31);
  EXPECT_EQ(tdepth(u), Depth(1));
  try {
    make_t(Series::from_terms(FieldPrime(3), p31.ns(), {{5, 1}}), p31);
    FAIL() << "expected SupportViolation";
  } catch (const SupportViolation& e) {
    EXPECT_EQ(e.exponent(), 5);
    EXPECT_EQ(e.code(), ErrorCode::support_violation);
  }
  const GroupParams p32(3, 2, 10);
  const TElement w = make_t(Series::from_terms(FieldPrime(3), p32.ns(), {{10, 1}, {19, 2}}), p32);
  EXPECT_EQ(tdepth(w), Depth(1));
  EXPECT_EQ(w.coeff(2), 2);
  EXPECT_THROW(make_t(Series::identity(FieldPrime(5), p31.ns()), p31), Error);
}

TEST(TGroup, GenExamples) {
  const GroupParams p31(3, 1, 10), p32(3, 2, 10);
  EXPECT_EQ(gen(1, p31).series(), Series::from_terms(FieldPrime(3), 30, {{4, 1}}));
  EXPECT_EQ(gen(2, p31).series(), Series::from_terms(FieldPrime(3), 30, {{7, 1}}));
  EXPECT_EQ(gen(3, p32).series(), Series::from_terms(FieldPrime(3), 90, {{28, 1}}));
  EXPECT_THROW(gen(10, p31), Error);
  EXPECT_THROW(gen(0, p31), Error);
}

TEST(TGroup, DepthAndUnitExamples) {
  const GroupParams g(3, 1, 10);
  const TElement u = TElement::from_terms(g, {{3, 2}, {4, 1}});
  EXPECT_EQ(tdepth(gen(1, g)), Depth(1));
  EXPECT_EQ(tdepth(u), Depth(3));
  EXPECT_TRUE(tdepth(TElement::identity(g)).is_infinite());
  EXPECT_EQ(leading_unit(u), 2);
  EXPECT_EQ(leading_unit(gen(7, g)), 1);
  EXPECT_EQ(leading_unit(comp_inverse(gen(1, g))), 2);
  EXPECT_THROW(leading_unit(TElement::identity(g)), Error);
}

TEST(TGroup, CommutatorExamples) {
  const GroupParams g(3, 1, 20);
  const TElement u = TElement::from_terms(g, {{2, 1}, {5, 2}});
  EXPECT_TRUE(commutator(u, u).is_identity());

  const TElement c = commutator(gen(2, g), gen(1, g));
  EXPECT_EQ(tdepth(c), Depth(5));
  EXPECT_EQ(leading_unit(c), 2);
  EXPECT_EQ(c.series().coeff(16), 2);

  const TElement d = commutator(gen(6, g), gen(1, g));
  EXPECT_EQ(tdepth(d), Depth(15));
  EXPECT_EQ(leading_unit(d), 2);
  EXPECT_EQ(d.series().coeff(46), 2);

  EXPECT_EQ(commutator(u, comp_inverse(u), gen(1, g), comp_inverse(gen(1, g))), commutator(u, gen(1, g)));
}

TEST(TGroup, CommutatorAgreesWithOracle) {
  // [t+t^7, t+t^4] on Nottingham-scale series with the independent composer.
  const GroupParams g(3, 1, 8);
  oracle::WordEvaluator ev{g.field(), g.ns(), g.q(), {}};
  const oracle::Poly c = ev.eval(CommutatorWord::commutator(CommutatorWord::gen(2), CommutatorWord::gen(1)));
  EXPECT_EQ(c, oracle::dense(commutator(gen(2, g), gen(1, g)).series()));
  EXPECT_EQ(oracle::j_depth(c), 15);
  EXPECT_EQ(c[16], 2);
}

TEST(TGroup, ConjugateAndCongruence) {
  const GroupParams g(5, 1, 15);
  std::mt19937_64 rng(11);
  const TElement t = TElement::identity(g);
  for (int trial = 0; trial < 20; ++trial) {
    const TElement u = random_element(g, 1 + int(rng() % 6), rng);
    const TElement h = random_element(g, 1, rng);
    EXPECT_EQ(conjugate(u, t), u);
    EXPECT_TRUE(conjugate(t, h).is_identity());
    EXPECT_EQ(tdepth(conjugate(u, h)), tdepth(u));
  }
  const GroupParams g3(3, 1, 10);
  EXPECT_TRUE(in_congruence(gen(5, g3), 5));
  EXPECT_FALSE(in_congruence(gen(1, g3), 2));
  EXPECT_TRUE(in_congruence(TElement::identity(g3), 9));
}

// The compressed kernel against Nottingham-scale series arithmetic, and
// closure of T under the group operations.
class TGroupProperty : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(TGroupProperty, CompressedMatchesSeries) {
  const auto [p, r, nt] = GetParam();
  const GroupParams g(p, r, nt);
  std::mt19937_64 rng(p * 100 + r);
  for (int trial = 0; trial < 30; ++trial) {
    const TElement u = random_element(g, 1, rng), v = random_element(g, 1, rng), w = random_element(g, 2, rng);
    const TElement uv = group_mul(u, v);
    EXPECT_EQ(uv.series(), group_mul(u.series(), v.series()));
    EXPECT_EQ(make_t(uv.series(), g), uv);
    EXPECT_EQ(make_t(comp_inverse(u).series(), g), comp_inverse(u));
    EXPECT_EQ(comp_inverse(u).series(), comp_inverse(u.series()));
    EXPECT_EQ(group_mul(group_mul(u, v), w), group_mul(u, group_mul(v, w)));
    EXPECT_TRUE(group_mul(u, comp_inverse(u)).is_identity());
    EXPECT_EQ(group_pow(u, 3), group_mul(group_mul(u, u), u));
    EXPECT_EQ(group_pow(u, -2), comp_inverse(group_mul(u, u)));
    EXPECT_EQ(commutator(u, v), group_mul(group_mul(comp_inverse(u), comp_inverse(v)), group_mul(u, v)));
  }
}

TEST_P(TGroupProperty, CommutatorDepthContainment) {
  // [T_i, T_j] <= T_{qj+i} for i > j with p not dividing i.
  const auto [p, r, nt] = GetParam();
  const GroupParams g(p, r, nt);
  std::mt19937_64 rng(p * 7 + r);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const int j = 1 + int(rng() % 4);
    const int i = j + 1 + int(rng() % 6);
    if (i % p == 0 || g.q() * j + i >= nt) continue;
    const TElement u = random_element(g, i, rng), v = random_element(g, j, rng);
    EXPECT_TRUE(in_congruence(commutator(u, v), g.q() * j + i)) << "i=" << i << " j=" << j;
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

INSTANTIATE_TEST_SUITE_P(Params, TGroupProperty,
                         ::testing::Values(std::tuple{3, 1, 40}, std::tuple{5, 1, 30}, std::tuple{3, 2, 30}));

TEST(TGroup, ContextMismatch) {
  const GroupParams a(3, 1, 10), b(3, 1, 11);
  try {
    group_mul(gen(1, a), gen(1, b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::context_mismatch);
  }
}

TEST(Word, EvaluateAndFlatten) {
  const GroupParams g(3, 1, 20);
  using W = CommutatorWord;
  const W c = W::commutator(W::gen(2), W::gen(1));
  EXPECT_EQ(evaluate(c, g), commutator(gen(2, g), gen(1, g)));
  EXPECT_TRUE(evaluate(W(), g).is_identity());
  EXPECT_EQ(evaluate(W::inverse(W::gen(3)), g), comp_inverse(gen(3, g)));
  EXPECT_EQ(evaluate(W::power(W::gen(1), -2), g), group_pow(gen(1, g), -2));

  const W w = W::product(W::power(c, 2), W::gen(5));
  const auto factors = flatten_factors(w);
  ASSERT_EQ(factors.size(), 3u);
  EXPECT_EQ(factors[0].kind(), W::Kind::commutator);
  EXPECT_EQ(factors[2].gen_depth(), 5);
  EXPECT_THROW(flatten_factors(W::power(c, 50), 10), Error);

  EXPECT_EQ(to_json(c), (nlohmann::json{{"comm", {{{"gen", 2}}, {{"gen", 1}}}}}));
}

TEST(Word, CertificateOutsideClosedForm) {
  // [g4,g2] [g7,g1]^2 [g14,g1] at p = 3 lands at depth 18.
  using W = CommutatorWord;
  const W w = W::product(W::product(W::commutator(W::gen(4), W::gen(2)), W::power(W::commutator(W::gen(7), W::gen(1)), 2)),
                         W::commutator(W::gen(14), W::gen(1)));
  const GroupParams g(3, 1, 30);
  oracle::WordEvaluator ev{g.field(), g.ns(), g.q(), {}};
  const oracle::Poly v = ev.eval(w);
  EXPECT_EQ(oracle::j_depth(v), 54);
  EXPECT_EQ(oracle::dense(evaluate(w, g).series()), v);
  EXPECT_EQ(tdepth(evaluate(w, g)), Depth(18));
}
