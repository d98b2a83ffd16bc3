#include <gtest/gtest.h>

#include "ccode/canon.hpp"
#include "ccode/verifier.hpp"
#include "oracles.hpp"

using namespace ccode;

TEST(CanonicalForm, Examples) {
  EXPECT_EQ(canonical_form({2, 1, 2, 1}).sequence, (TransitionSequence{1, 2, 1, 2}));
  EXPECT_EQ(canonical_form({3, 1, 3, 1}).sequence, (TransitionSequence{1, 2, 1, 2}));
  const auto fixed = canonical_form({1, 2, 1, 2});
  EXPECT_EQ(fixed.sequence, (TransitionSequence{1, 2, 1, 2}));
  EXPECT_EQ(fixed.shift, 0u);
  EXPECT_FALSE(fixed.reversed);
  EXPECT_TRUE(canonical_form(TransitionSequence{}).sequence.empty());
}

TEST(CanonicalForm, ReportsShiftAndPermutation) {
  const TransitionSequence t{3, 1, 3, 2, 3, 1, 3, 2};
  const auto cf = canonical_form(t);
  EXPECT_EQ(relabel(rotate(t, cf.shift), cf.permutation), cf.sequence);
  // permutation is a bijection on 1..3
  std::vector<Label> img(cf.permutation.begin() + 1, cf.permutation.end());
  std::sort(img.begin(), img.end());
  EXPECT_EQ(img, (std::vector<Label>{1, 2, 3}));
}

TEST(CanonicalForm, ReversalFlag) {
  // (1,2,3,1,3,2) reversed is (2,3,1,3,2,1)
  const TransitionSequence t{1, 1, 2, 3, 2, 3};
  const auto plain = canonical_form(t, false);
  const auto both = canonical_form(t, true);
  EXPECT_LE(both.sequence, plain.sequence);
  const auto& src = both.reversed ? reversed(t) : t;
  EXPECT_EQ(relabel(rotate(src, both.shift), both.permutation), both.sequence);
  // a word and its reversal are always isomorphic with the flag on
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto w = oracle::random_word(rng, 5, 1 + trial % 20);
    EXPECT_TRUE(are_isomorphic(w, reversed(w), true));
  }
}

TEST(AreIsomorphic, Examples) {
  EXPECT_TRUE(are_isomorphic({1, 2, 1, 2}, {2, 3, 2, 3}));
  EXPECT_FALSE(are_isomorphic({1, 2, 1, 2}, {1, 2, 2, 1}));
  EXPECT_FALSE(are_isomorphic({1, 2, 1, 2}, {1, 2, 1, 2, 1, 2}));
  const TransitionSequence t{1, 2, 3, 1, 4, 3, 2, 4};
  for (std::size_t s = 0; s < t.size(); ++s) EXPECT_TRUE(are_isomorphic(t, rotate(t, s)));
}

TEST(Classify, PartitionsAndSorts) {
  EXPECT_TRUE(classify({}).empty());
  const auto cls = classify({{2, 3, 2, 3}, {1, 2, 3, 1, 2, 3}, {1, 2, 1, 2}, {3, 1, 2, 3, 1, 2}, {4, 1, 4, 1}});
  ASSERT_EQ(cls.size(), 2u);
  EXPECT_EQ(cls[0].representative.sequence, (TransitionSequence{1, 2, 1, 2}));
  EXPECT_EQ(cls[0].count, 3u);
  EXPECT_EQ(cls[1].representative.sequence, (TransitionSequence{1, 2, 3, 1, 2, 3}));
  EXPECT_EQ(cls[1].count, 2u);
}

// Exhaustive N <= 8, d <= 4 against the rotation x permutation oracle.
TEST(CanonicalForm, MatchesNaiveOracleExhaustively) {
  for (int d = 1; d <= 4; ++d) {
    for (std::size_t n = 1; n <= 8; ++n) {
      oracle::for_each_word(d, n, [&](const TransitionSequence& t) {
        const auto cf = canonical_form(t);
        ASSERT_EQ(cf.sequence, oracle::naive_canonical(t, d)) << format_sequence(t);
        ASSERT_EQ(canonical_form(cf.sequence).sequence, cf.sequence);
      });
    }
  }
}

// Randomized: N <= 30, d <= 10.
TEST(CanonicalForm, RandomizedInvariances) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = dim(rng);
    const auto t = oracle::random_word(rng, d, len(rng));
    const auto cf = canonical_form(t).sequence;
    ASSERT_EQ(canonical_form(cf).sequence, cf);
    std::uniform_int_distribution<std::size_t> shift(0, t.size() - 1);
    ASSERT_EQ(canonical_form(rotate(t, shift(rng))).sequence, cf);
    ASSERT_EQ(canonical_form(relabel(t, oracle::random_permutation(rng, d))).sequence, cf);
  }
}

TEST(CanonicalForm, PreservesValidityAndSymmetry) {
  std::mt19937_64 rng(99);
  int valid_seen = 0, sym_seen = 0;
  for (int trial = 0; trial < 200000; ++trial) {
    const int d = 4;
    const std::size_t half = 2 + trial % 4;
    TransitionSequence t;
    if (trial % 2) {
      auto h = oracle::random_word(rng, d, half).vec();
      h.insert(h.end(), h.begin(), h.end());
      t = TransitionSequence(h);
    } else {
      t = oracle::random_word(rng, d, 2 * half);
    }
    if (!is_closed(t)) continue;
    const auto cf = canonical_form(t).sequence;
    for (int k = 1; k <= 3; ++k) {
      const bool v = !check_spread(t, {d, k});
      ASSERT_EQ(v, !check_spread(cf, {d, k}));
      valid_seen += v;
    }
    if (is_symmetric(t)) {
      ++sym_seen;
      bool some = false;
      for (std::size_t s = 0; s < cf.size() && !some; ++s) some = is_symmetric(rotate(cf, s));
      ASSERT_TRUE(some);
    }
  }
  EXPECT_GT(valid_seen, 100);
  EXPECT_GT(sym_seen, 100);
}
