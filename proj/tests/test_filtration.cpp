#include <gtest/gtest.h>

#include <numeric>

#include "fesenko/error.hpp"
#include "fesenko/filtration.hpp"
#include "naive_oracle.hpp"

using namespace fesenko;
using W = CommutatorWord;

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

std::vector<int> coprime_from(int lo, int hi, int p) {
  std::vector<int> v;
  for (int d = lo; d < hi; ++d)
    if (d % p) v.push_back(d);
  return v;
}

void expect_slot_invariants(const EchelonBasis& b) {
  int prev = 0;
  for (int k : b.depths()) {
    EXPECT_GT(k, prev);
    EXPECT_LT(k, b.params().nt());
    const Slot* s = b.slot(k);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(tdepth(s->element), Depth(k));
    EXPECT_EQ(leading_unit(s->element), s->unit);
    EXPECT_TRUE(group_mul(s->element, s->inverse).is_identity());
    prev = k;
  }
}

}  // namespace

TEST(DepthSet, Basics) {
  const DepthSet s(10, {7, 3, 3, 12, 0, 5});
  EXPECT_EQ(s.members(), (std::vector<int>{3, 5, 7}));
  EXPECT_TRUE(s.contains(5));
  EXPECT_EQ(s.count_below(6), 2u);
  EXPECT_EQ(s.min(), 3);
  EXPECT_EQ(set_union(s, DepthSet(10, {4})).members(), (std::vector<int>{3, 4, 5, 7}));
  EXPECT_EQ(set_difference(s, DepthSet(10, {5})).members(), (std::vector<int>{3, 7}));
  EXPECT_EQ(to_json(s, 7)["stable_below"], 7);
  EXPECT_FALSE(DepthSet(10).min());
}

TEST(Echelon, ReduceExamples) {
  const GroupParams g(3, 1, 10);
  EchelonBasis empty(g);
  const TElement x = TElement::from_terms(g, {{2, 1}, {3, 2}});
  const Reduction r0 = reduce(empty, x, W::gen(9));
  EXPECT_EQ(r0.residual, x);
  EXPECT_EQ(r0.residual_word.kind(), W::Kind::gen);

  EchelonBasis one(g);
  ASSERT_TRUE(insert(one, gen(1, g), W::gen(1)));
  EXPECT_TRUE(reduce(one, group_pow(gen(1, g), 2), W()).residual.is_identity());
  const Reduction r2 = reduce(one, TElement::from_terms(g, {{1, 2}}), W());
  EXPECT_GE(tdepth(r2.residual), Depth(2));
}

TEST(Echelon, ReductionWordReproducesResidual) {
  const GroupParams g(3, 1, 20);
  EchelonBasis b = full_group_basis(g);
  const TElement x = TElement::from_terms(g, {{1, 2}, {4, 1}, {9, 2}});
  const Reduction r = b.reduce(comp_inverse(x), W());
  EXPECT_TRUE(r.residual.is_identity());
  EXPECT_EQ(evaluate(r.residual_word, g), x);
}

TEST(Echelon, InsertExamples) {
  const GroupParams g(3, 1, 10);
  EchelonBasis b(g);
  EXPECT_TRUE(insert(b, gen(1, g), W::gen(1)));
  EXPECT_EQ(b.depths(), (std::vector<int>{1}));
  EXPECT_FALSE(insert(b, gen(1, g), W::gen(1)));
  EXPECT_TRUE(insert(b, gen(2, g), W::gen(2)));
  EXPECT_EQ(b.depths(), (std::vector<int>{1, 2}));
  EXPECT_FALSE(b.insert(TElement::identity(g), W()));
  EXPECT_THROW(b.insert(gen(1, GroupParams(3, 1, 11)), W()), Error);
  expect_slot_invariants(b);
}

TEST(Echelon, CloseExamples) {
  const GroupParams g(3, 1, 30);
  const auto gens = t_generators(g);
  EXPECT_TRUE(close(EchelonBasis(g), gens).empty());

  const EchelonBasis full = close(full_group_basis(g), gens);
  EXPECT_EQ(full.depths(), range(1, 30));

  EchelonBasis seed(g);
  seed.insert(commutator(gen(2, g), gen(1, g)), W::commutator(W::gen(2), W::gen(1)));
  const EchelonBasis closed = close(seed, gens);
  const DepthSet gamma2 = depth_set(lcs_series(g, 2)[1]);
  const DepthSet got = depth_set(closed);
  EXPECT_TRUE(got.contains(5));
  EXPECT_TRUE(set_difference(got, gamma2).empty());
  expect_slot_invariants(closed);
}

TEST(Lcs, NextExamples) {
  const GroupParams g(3, 1, 30);
  const auto gens = t_generators(g);
  const EchelonBasis g2 = lcs_next(full_group_basis(g), gens);
  EXPECT_EQ(depth_set(g2).min(), 5);
  EXPECT_TRUE(lcs_next(EchelonBasis(g), gens).empty());
  EXPECT_EQ(depth_set(lcs_next(g2, gens)).min(), 8);
}

TEST(Lcs, SeriesExamples) {
  const GroupParams g(3, 1, 30);
  const auto s = lcs_series(g, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(depth_set(s[0]).members(), range(1, 30));
  const DepthSet g2 = depth_set(s[1]);
  EXPECT_EQ(g2.filter([](int d) { return d % 3 != 0; }).members(), coprime_from(5, 30, 3));
  EXPECT_TRUE(g2.contains(15));
  for (std::size_t n = 1; n < s.size(); ++n) {
    EXPECT_TRUE(set_difference(depth_set(s[n]), depth_set(s[n - 1])).empty()) << "nesting at n=" << n + 1;
    expect_slot_invariants(s[n]);
  }
  EXPECT_THROW(lcs_series(g, 0), Error);
}

TEST(Lcs, DepthSetExamples) {
  const GroupParams g(3, 1, 12);
  EXPECT_EQ(depth_set(full_group_basis(g)).members(), range(1, 12));
  EXPECT_TRUE(depth_set(EchelonBasis(g)).empty());
  EXPECT_EQ(depth_set(lcs_series(g, 2)[1]).members(), (std::vector<int>{5, 7, 8, 10, 11}));
}

TEST(Lcs, IndexLaw) {
  const GroupParams g(3, 1, 30);
  const auto s = lcs_series(g, 3);
  EXPECT_EQ(index_exponent_below(s[2], 10), 1u);
  EXPECT_EQ(index_exponent_below(s[0], 10), 9u);
  EXPECT_EQ(index_exponent_below(s[1], 1), 0u);
}

// Every slot word, evaluated with the independent series composer, gives the
// slot element.
TEST(Lcs, WordSoundnessAgainstOracle) {
  const GroupParams g(3, 1, 20);
  const auto s = lcs_series(g, 3);
  oracle::WordEvaluator ev{g.field(), g.ns(), g.q(), {}};
  for (const EchelonBasis& b : s)
    for (int k : b.depths()) {
      const Slot* slot = b.slot(k);
      EXPECT_EQ(ev.eval(slot->word), oracle::dense(slot->element.series())) << "depth " << k;
      EXPECT_EQ(evaluate(slot->word, g), slot->element);
    }
}

// Depth 45 of gamma_2 at p = 3, r = 2: a multiple of q well below the closed
// form's range; its certificate is re-evaluated independently.
TEST(Lcs, CertificateForDivisibleDepthAtR2) {
  const GroupParams g(3, 2, 48);
  const auto s = lcs_series(g, 2);
  const Slot* slot = s[1].slot(45);
  ASSERT_NE(slot, nullptr);
  oracle::WordEvaluator ev{g.field(), g.ns(), g.q(), {}};
  const oracle::Poly v = ev.eval(slot->word);
  EXPECT_EQ(v, oracle::dense(slot->element.series()));
  EXPECT_EQ(oracle::j_depth(v), 405);
  for (const W& f : flatten_factors(slot->word)) EXPECT_NE(f.kind(), W::Kind::identity);
}

TEST(Brute, Examples) {
  const GroupParams g4(3, 1, 4);
  const BruteLcs b4 = brute_lcs_with_orders(g4, 2);
  EXPECT_EQ(b4.orders[0], 27);
  EXPECT_TRUE(b4.depth_sets[1].empty());

  const auto b8 = brute_lcs(GroupParams(3, 1, 8), 2);
  EXPECT_EQ(b8[1].members(), (std::vector<int>{5, 7}));

  try {
    brute_lcs(GroupParams(3, 1, 12), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_guard);
  }
}

// The two implementations are each other's oracle; subgroup orders counted by
// the enumeration must equal p^(number of slots).
class BruteAgreement : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(BruteAgreement, EngineMatchesEnumeration) {
  const auto [p, r, nt] = GetParam();
  const GroupParams g(p, r, nt);
  const int n_max = 4;
  const BruteLcs brute = brute_lcs_with_orders(g, n_max);
  const auto engine = lcs_series(g, n_max);
  for (int n = 0; n < n_max; ++n) {
    EXPECT_EQ(depth_set(engine[n]), brute.depth_sets[n]) << "n=" << n + 1;
    long long order = 1;
    for (std::size_t k = 0; k < engine[n].size(); ++k) order *= p;
    EXPECT_EQ(brute.orders[n], order) << "n=" << n + 1;
  }
}

INSTANTIATE_TEST_SUITE_P(Small, BruteAgreement,
                         ::testing::Values(std::tuple{3, 1, 4}, std::tuple{3, 1, 5}, std::tuple{3, 1, 6},
                                           std::tuple{3, 1, 7}, std::tuple{3, 1, 8}, std::tuple{5, 1, 5},
                                           std::tuple{3, 2, 6}, std::tuple{3, 2, 8}));
