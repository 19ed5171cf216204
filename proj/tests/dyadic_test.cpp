#include "hindman/dyadic.hpp"

#include <random>

#include <gtest/gtest.h>

#include "hindman/errors.hpp"

namespace hindman {
namespace {

TEST(MeasuresTest, Examples) {
  EXPECT_EQ(measures(Dyadic(12)), (Measures{3, 2}));
  EXPECT_EQ(measures(Dyadic(1)), (Measures{0, 0}));
  EXPECT_EQ(measures(Dyadic(40)), (Measures{5, 3}));
}

TEST(MeasuresTest, ZeroIsRejected) { EXPECT_THROW(Dyadic(0), DomainError); }

TEST(MeasuresTest, DigitsReconstructValue) {
  Dyadic x(Natural("340282366920938463463374607431768211457"));  // 2^128 + 1
  EXPECT_EQ(x.mu(), 128);
  EXPECT_EQ(x.lambda(), 0);
  EXPECT_EQ(Dyadic::from_digits(x.digits()), x);
  EXPECT_EQ(Dyadic::from_digits({5, 3}).value(), 40);
}

TEST(ApartTest, Examples) {
  EXPECT_TRUE(apart(4, 8));
  EXPECT_FALSE(apart(8, 12));
  EXPECT_FALSE(apart(2, 3));
}

TEST(ApartTest, SumsOfApartPairsAreCarryFree) {
  // Exhaustive over x << y < 2^16.
  std::size_t pairs = 0;
  for (std::uint64_t x = 1; x < (1u << 16); ++x) {
    Dyadic dx(x);
    const std::uint64_t step = std::uint64_t{1} << (dx.mu() + 1);
    for (std::uint64_t y = step; y < (1u << 16); y += step) {
      Dyadic dy(y);
      ASSERT_TRUE(apart(dx, dy));
      Dyadic sum = dx + dy;
      ASSERT_EQ(sum.mu(), dy.mu());
      ASSERT_EQ(sum.lambda(), dx.lambda());
      ++pairs;
    }
  }
  // sum over mu = a of 2^a * (2^(15-a) - 1)
  EXPECT_EQ(pairs, 16u * (1u << 15) - ((1u << 16) - 1));
}

TEST(BlockTest, Examples) {
  EXPECT_EQ(block(2), (NumberSet{4, 5, 6, 7}));
  EXPECT_EQ(block(0), (NumberSet{1}));
  NumberSet b3 = block(3);
  EXPECT_EQ(b3.size(), 8u);
  EXPECT_EQ(b3.front(), 8);
  EXPECT_EQ(b3.back(), 15);
  EXPECT_EQ(block_leq(2), (NumberSet{1, 2, 3, 4, 5, 6, 7}));
}

TEST(BlockTest, EveryMemberHasTheBlockMu) {
  for (int n = 0; n <= 12; ++n) {
    NumberSet b = block(n);
    ASSERT_EQ(b.size(), std::size_t{1} << n);
    for (const Natural& x : b) ASSERT_EQ(high_bit(x), n);
  }
}

TEST(BlockTest, GuardAndLazyRange) {
  Guards guards;
  guards.max_block_bits = 10;
  EXPECT_THROW(block(11, guards), GuardError);
  EXPECT_THROW(block(-1), DomainError);
  // The lazy range is never guarded.
  BlockRange huge(100);
  auto it = huge.begin();
  EXPECT_EQ(*it, pow2(100));
  ++it;
  EXPECT_EQ(*it, pow2(100) + 1);
}

TEST(FiniteSumsTest, Examples) {
  EXPECT_EQ(finite_sums(NumberSet{1, 2, 4}), (NumberSet{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(finite_sums(NumberSet{1, 2, 4}, 2), (NumberSet{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(finite_sums(NumberSet{8, 32}), (NumberSet{8, 32, 40}));
}

TEST(FiniteSumsTest, Errors) {
  EXPECT_THROW(finite_sums(NumberSet{1, 2}, 0), DomainError);
  Guards guards;
  guards.max_sum_terms = 3;
  EXPECT_THROW(finite_sums(NumberSet{1, 2, 4, 8}, std::nullopt, guards), GuardError);
}

NumberSet random_set(std::mt19937_64& rng, std::size_t size, std::uint64_t bound) {
  std::uniform_int_distribution<std::uint64_t> pick(1, bound);
  std::vector<Natural> v;
  while (v.size() < size) v.push_back(pick(rng));
  return NumberSet(std::move(v));
}

TEST(FiniteSumsTest, MonotoneInSetAndTermCap) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    NumberSet h = random_set(rng, 1 + trial % 7, 200);
    std::vector<Natural> grown = h.elements();
    grown.push_back(Natural(1 + trial));
    NumberSet bigger(grown);
    ASSERT_TRUE(finite_sums(h).is_subset_of(finite_sums(bigger)));
    for (int k = 1; k < static_cast<int>(h.size()); ++k) {
      ASSERT_TRUE(finite_sums(h, k).is_subset_of(finite_sums(h, k + 1)));
    }
    ASSERT_TRUE(finite_sums(h, 1) == h);
    ASSERT_TRUE(finite_sums(h, static_cast<int>(h.size())) == finite_sums(h));
  }
}

TEST(FiniteSumsTest, ApartSetsHaveUniqueRepresentations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    // Build x_1 << x_2 << ... with random digit blocks.
    std::vector<Natural> v;
    int next_low = 0;
    const std::size_t size = 1 + trial % 12;
    while (v.size() < size) {
      int low = next_low + static_cast<int>(rng() % 3);
      int width = static_cast<int>(rng() % 3);
      Natural x = pow2(low) + (Natural(rng() % (1u << width)) << (low + 1));
      v.push_back(x);
      next_low = high_bit(x) + 1;
    }
    NumberSet h(v);
    ASSERT_TRUE(has_apartness(h));
    EXPECT_EQ(finite_sums(h).size(), (std::size_t{1} << h.size()) - 1);
  }
}

TEST(WeakApartnessTest, Examples) {
  auto pair = has_weak_apartness(NumberSet{2, 3});
  EXPECT_FALSE(pair);
  EXPECT_EQ(pair.violation, (std::vector<Natural>{2, 3}));

  auto triple = has_weak_apartness(NumberSet{1, 3, 5});
  EXPECT_FALSE(triple);
  EXPECT_EQ(triple.violation, (std::vector<Natural>{1, 3, 5}));

  EXPECT_TRUE(has_weak_apartness(NumberSet{2, 8, 32}));
  EXPECT_TRUE(has_apartness(NumberSet{2, 8, 32}));
}

TEST(WeakApartnessTest, ApartnessIsStronger) {
  EXPECT_TRUE(has_weak_apartness(NumberSet{3, 4}));
  auto check = has_apartness(NumberSet{3, 4, 12});
  EXPECT_FALSE(check);
  EXPECT_EQ(check.violation, (std::vector<Natural>{4, 12}));
  // Two equal lambdas are allowed, three are not.
  EXPECT_TRUE(has_weak_apartness(NumberSet{2, 6}));
  EXPECT_FALSE(has_weak_apartness(NumberSet{2, 6, 10}));
}

}  // namespace
}  // namespace hindman
