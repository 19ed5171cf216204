#include "hindman/delta3.hpp"

#include <set>

#include <gtest/gtest.h>

#include "hindman/catalog.hpp"
#include "hindman/errors.hpp"

namespace hindman {
namespace {

Delta3Construction odd_only() { return Delta3Construction(instant_delta3({odd_powers()})); }
Delta3Construction odd_even() { return Delta3Construction(instant_delta3({odd_powers(), even_powers()})); }

TEST(Delta3Test, BlockIndicator) {
  auto c = odd_only();
  EXPECT_TRUE(c.block_indicator(0, 1, 3, 5));
  EXPECT_FALSE(c.block_indicator(0, 2, 3, 5));
  for (int n = 0; n < 12; ++n) EXPECT_FALSE(c.block_indicator(1, n, 3, 5));
}

TEST(Delta3Test, CandidateSets) {
  auto c = odd_even();
  EXPECT_EQ(c.candidate_set(0, 7, 4).members, (std::vector<int>{1}));
  EXPECT_EQ(c.candidate_set(1, 7, 6).members, (std::vector<int>{2, 4}));
  EXPECT_TRUE(c.candidate_set(0, 7, 1).members.empty());
  EXPECT_EQ(c.candidate_set(1, 3, 5).members, (std::vector<int>{2, 4}));
  EXPECT_EQ(c.candidate_set(1, 3, 4).members, (std::vector<int>{2}));  // fewer than 2^i
}

TEST(Delta3Test, ChooserAndRequest) {
  auto c = odd_even();
  EXPECT_EQ(c.chooser(1, 40), 0);
  EXPECT_EQ(c.chooser(2, 40), 1);
  EXPECT_EQ(odd_only().chooser(2, 1024), 2);  // fallback
  EXPECT_THROW(c.chooser(3, 40), DomainError);

  EXPECT_EQ(odd_only().request(1, 40), 2);
  EXPECT_EQ(odd_only().request(2, 1024), 7);
  for (std::uint64_t w : {2u, 40u, 96u, 1024u}) EXPECT_EQ(c.request(0, w), 1);
}

TEST(Delta3Test, RequestsStayInBlock) {
  Delta3Construction c(standard_delta3_catalog());
  RequestFunction r = c.request_function();
  for (int s = 1; s <= 12; ++s) {
    for (const Natural& w : BlockRange(s)) {
      for (int n = 0; n < low_bit(w); ++n) {
        ASSERT_NO_THROW(r.evaluate(n, w));  // evaluate rejects values outside B^n
      }
    }
  }
}

TEST(Delta3Test, ColoringContract) {
  auto odd = odd_only();
  for (int s = 1; s < 40; ++s) EXPECT_EQ(odd.color(pow2(s)), 0);
  EXPECT_NE(odd.color(40), odd.color(42));

  Delta3Construction c(standard_delta3_catalog());
  for (int s = 1; s <= 10; ++s) {
    for (const Natural& w : BlockRange(s)) {
      for (int n = 0; n < low_bit(w); ++n) {
        ASSERT_NE(c.color(w), c.color(w + c.request(n, w))) << "w=" << w << " n=" << n;
      }
    }
  }
}

TEST(Delta3Test, PriorityCardinality) {
  Delta3Construction c(standard_delta3_catalog());
  for (int k : {0, 1, 3, 6, 10, 20}) {
    for (int s : {1, 4, 8, 12, 25, 40}) {
      std::set<int> earlier;
      for (int i = 0; i <= 4; ++i) {
        ASSERT_LT(earlier.size(), std::size_t{1} << i);
        auto ci = c.candidate_set(i, k, s).members;
        if (ci.size() == (std::size_t{1} << i)) {
          bool chosen = false;
          for (int n : ci) chosen = chosen || c.chooser_profile(n, k, s) == i;
          ASSERT_TRUE(chosen) << "i=" << i << " k=" << k << " s=" << s;
        }
        earlier.insert(ci.begin(), ci.end());
      }
    }
  }
}

TEST(Delta3Test, CandidateLimits) {
  EXPECT_EQ(odd_only().candidate_limit(0).members, (std::vector<int>{1}));
  EXPECT_EQ(odd_even().candidate_limit(1).members, (std::vector<int>{2, 4}));
  Delta3Construction c(standard_delta3_catalog());
  EXPECT_EQ(c.candidate_limit(4).members.front(), 5);
  EXPECT_EQ(c.candidate_limit(4).members.back(), 35);
  EXPECT_EQ(c.candidate_limit(5).members.size(), 32u);
  for (int i : {0, 1, 2, 4, 5}) EXPECT_TRUE(c.check_candidate_limit(i).ok()) << i;
  EXPECT_THROW(c.candidate_limit(3), DomainError);  // {2, 8} runs out
}

TEST(Delta3Test, InstantWitness) {
  auto c = odd_only();
  Delta3Search found = find_witness(c, 0);
  ASSERT_TRUE(found.witness) << found.reason;
  const Delta3Witness& w = *found.witness;
  EXPECT_EQ(w.x, 2);
  EXPECT_EQ(w.w1, 8);
  EXPECT_EQ(w.w2, 32);
  EXPECT_NE(w.color_sum, w.color_with_x);
  EXPECT_TRUE(verify_witness(c.family(), w).ok());
}

TEST(Delta3Test, DelayedWitnesses) {
  Delta3Construction delayed(delayed_delta3({odd_powers()}, {5, 0, 0}));
  Delta3Search found = find_witness(delayed, 0);
  ASSERT_TRUE(found.witness) << found.reason;
  EXPECT_EQ(found.witness->x, 2);
  EXPECT_EQ(found.witness->w1, 8);
  EXPECT_EQ(found.witness->w2, 128);
  EXPECT_EQ(found.witness->s_k, 5);
  EXPECT_TRUE(verify_witness(delayed.family(), *found.witness).ok());

  Delta3Construction c(standard_delta3_catalog());
  Delta3Search four = find_witness(c, 4);
  ASSERT_TRUE(four.witness) << four.reason;
  EXPECT_EQ(four.witness->w1, pow2(37));
  EXPECT_EQ(four.witness->w2, pow2(39));
  // 32 is requested through index 2, which also contains it; the first
  // position that index 4 wins is 7.
  EXPECT_EQ(four.witness->x, 32);
  EXPECT_EQ(c.chooser(5, pow2(37) + pow2(39)), 2);
  EXPECT_EQ(c.chooser(7, pow2(37) + pow2(39)), 4);
  EXPECT_EQ(c.request(7, pow2(37) + pow2(39)), 128);
  EXPECT_TRUE(verify_witness(c.family(), *four.witness).ok());

  Delta3Search five = find_witness(c, 5);
  ASSERT_TRUE(five.witness) << five.reason;
  EXPECT_GT(five.witness->s, five.witness->s_k);
  EXPECT_TRUE(verify_witness(c.family(), *five.witness).ok());
}

TEST(Delta3Test, WitnessRefusals) {
  Delta3Construction c(standard_delta3_catalog());
  EXPECT_FALSE(find_witness(c, 2).witness);  // not weakly apart
  EXPECT_FALSE(find_witness(c, 3).witness);  // finite
  Delta3Search blind = find_witness_blind(c, 3, 16);
  EXPECT_FALSE(blind.witness);
  EXPECT_NE(blind.reason.find("not found within bound"), std::string::npos);
  EXPECT_THROW(find_witness_blind(c, 3, 17), GuardError);
}

TEST(Delta3Test, BlindAgreesWithOracle) {
  auto c = odd_only();
  Delta3Search blind = find_witness_blind(c, 0, 16);
  ASSERT_TRUE(blind.witness);
  EXPECT_TRUE(verify_witness(c.family(), *blind.witness).ok());
  EXPECT_LE(blind.witness->w2, 32);
}

TEST(Delta3Test, VerifyCatchesTampering) {
  auto c = odd_only();
  Delta3Witness w = *find_witness(c, 0).witness;
  Delta3Witness bad = w;
  bad.color_with_x = bad.color_sum;
  EXPECT_FALSE(verify_witness(c.family(), bad).ok());
  bad = w;
  bad.w2 = 16;
  EXPECT_FALSE(verify_witness(c.family(), bad).ok());
  bad = w;
  bad.x = 3;
  EXPECT_FALSE(verify_witness(c.family(), bad).ok());
}

}  // namespace
}  // namespace hindman
