#include "hindman/tree_coloring.hpp"

#include <gtest/gtest.h>

#include "hindman/errors.hpp"

namespace hindman {
namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> endpoints(const BlockTree& tree) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& e : tree.edges) out.emplace_back(e.from.convert_to<std::uint64_t>(), e.to.convert_to<std::uint64_t>());
  std::sort(out.begin(), out.end());
  return out;
}

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

TEST(ExtendRequestTest, DefaultAgreementAndRejection) {
  EXPECT_EQ(extend_request({}).evaluate(1, 4), 3);
  EXPECT_EQ(extend_request({{{1, Natural(4)}, Natural(2)}}).evaluate(1, 4), 2);
  EXPECT_THROW(extend_request({{{1, Natural(4)}, Natural(5)}}), DomainError);
  EXPECT_THROW(extend_request({{{2, Natural(4)}, Natural(4)}}), DomainError);
}

TEST(RequestFunctionTest, IllegalQueriesAndBadEvaluators) {
  EXPECT_THROW(default_request().evaluate(2, 4), DomainError);
  RequestFunction broken([](int n, const Natural&) { return pow2(n + 1); }, "broken");
  EXPECT_THROW(broken.evaluate(0, 2), std::logic_error);
}

TEST(TreeEdgesTest, Examples) {
  EXPECT_EQ(endpoints(tree_edges(2, default_request())), (Pairs{{4, 5}, {4, 7}, {6, 7}}));
  EXPECT_EQ(endpoints(tree_edges(2, minimal_request())), (Pairs{{4, 5}, {4, 6}, {6, 7}}));
  EXPECT_EQ(endpoints(tree_edges(1, random_request(3))), (Pairs{{2, 3}}));
}

TEST(TreeEdgesTest, Guard) {
  Guards guards;
  guards.max_tree_bits = 4;
  EXPECT_THROW(tree_edges(5, default_request(), guards), GuardError);
}

TEST(TreeEdgesTest, RandomRequestsGiveTrees) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RequestFunction request = seed % 2 ? random_request(seed) : random_profile_request(seed);
    for (int s = 0; s <= 9; ++s) {
      BlockTree tree = tree_edges(s, request);
      ASSERT_EQ(tree.edges.size(), (std::size_t{1} << s) - 1);
      ASSERT_TRUE(tree.is_tree()) << "seed " << seed << " s " << s;
    }
  }
}

TEST(TreeEdgesTest, CycleIsDetected) {
  BlockTree tree = tree_edges(2, minimal_request());
  tree.edges.back() = TreeEdge{Natural(4), Natural(6), 0};
  EXPECT_FALSE(tree.is_tree());
}

TEST(BridgeTest, Examples) {
  auto r = extend_request({{{1, Natural(4)}, Natural(2)}, {{2, Natural(8)}, Natural(5)}});
  EXPECT_EQ(bridge(4, 1, r).to, 6);
  EXPECT_EQ(bridge(4, 1, default_request()).to, 7);
  EXPECT_EQ(bridge(8, 2, r).to, 13);
  EXPECT_THROW(bridge(4, 2, r), DomainError);
}

TEST(BridgeTest, UniqueCrossingEdge) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    RequestFunction request = random_request(seed);
    for (int s = 1; s <= 10; ++s) {
      BlockTree tree = tree_edges(s, request);
      for (const Natural& w : BlockRange(s)) {
        Dyadic dw(w);
        for (int n = 0; n < dw.lambda(); ++n) {
          const Natural hi = w + pow2(n), end = w + pow2(n + 1);
          int crossings = 0;
          for (const auto& e : tree.edges) {
            const bool from_low = e.from >= w && e.from < hi;
            const bool to_high = e.to >= hi && e.to < end;
            const bool from_high = e.from >= hi && e.from < end;
            const bool to_low = e.to >= w && e.to < hi;
            if ((from_low && to_high) || (from_high && to_low)) {
              ++crossings;
              ASSERT_EQ(e.from, w);
            }
          }
          ASSERT_EQ(crossings, 1);
          ASSERT_EQ(bridge(dw, n, request).to, w + request.evaluate(n, w));
        }
      }
    }
  }
}

TEST(ColorModTest, Examples) {
  const RequestFunction min = minimal_request();
  EXPECT_EQ(color_mod(min, 4, 2), 0);
  EXPECT_EQ(color_mod(min, 5, 2), 1);
  EXPECT_EQ(color_mod(min, 6, 2), 1);
  EXPECT_EQ(color_mod(min, 7, 2), 0);
  EXPECT_EQ(color_mod(min, 7, 3), 2);

  const RequestFunction def = default_request();
  EXPECT_EQ(color_mod(def, 4, 2), 0);
  EXPECT_EQ(color_mod(def, 5, 2), 1);
  EXPECT_EQ(color_mod(def, 6, 2), 0);
  EXPECT_EQ(color_mod(def, 7, 2), 1);
  EXPECT_EQ(color_mod_bfs(def, 6, 2), 0);

  EXPECT_EQ(color_mod(random_request(1), 2, 2), 0);
  EXPECT_EQ(color_mod(random_request(1), 3, 2), 1);
  for (int s = 1; s < 200; s += 17) EXPECT_EQ(color_mod(random_request(5), Dyadic(pow2(s)), 7), 0);
}

TEST(ColorModTest, Errors) {
  EXPECT_THROW(color_mod(default_request(), 1, 2), DomainError);
  EXPECT_THROW(color_mod(default_request(), 4, 1), DomainError);
}

TEST(ColorModTest, ContractAndOracleEquivalence) {
  const std::vector<Natural> moduli{2, 3, 5, 8};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    RequestFunction request = seed % 2 ? random_request(seed) : random_profile_request(seed);
    TreeColoring coloring(request);
    for (int s = 1; s <= 10; ++s) {
      std::vector<Integer> bfs = potentials_bfs(s, request);
      for (const Natural& w : BlockRange(s)) {
        Dyadic dw(w);
        const Integer p = coloring.potential(dw);
        ASSERT_EQ(p, bfs[static_cast<std::size_t>(w - pow2(s))]) << "w " << w;
        for (int n = 0; n < dw.lambda(); ++n) {
          Dyadic up(w + request.evaluate(n, w));
          ASSERT_EQ(coloring.potential(up), p + 1);
          for (const Natural& r : moduli) {
            ASSERT_EQ(coloring.residue(up, r), (coloring.residue(dw, r) + 1) % r);
          }
        }
        ASSERT_EQ(coloring.parity(dw), static_cast<int>(coloring.residue(dw, 2)));
      }
    }
  }
}

TEST(ColorModTest, ProfileRequestsAreQuadratic) {
  for (RequestFunction request : {default_request(), minimal_request(), random_profile_request(9)}) {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      TreeColoring coloring(request);
      Natural w = pow2(60) + (Natural(trial * 0x9e3779b97f4a7c15ull) >> 4);
      coloring.parity(Dyadic(w));
      EXPECT_LE(coloring.request_evaluations(), 4u * 60 * 60) << request.description();
    }
  }
}

TEST(LiftTriTest, Plumbing) {
  TriRequestFunction q{[](int n, int, int) { return pow2(n); }, {}, "2^n"};
  RequestFunction lifted = lift_tri(q);
  for (std::uint64_t w : {8u, 24u, 40u, 96u}) {
    EXPECT_EQ(lifted.evaluate(1, w), minimal_request().evaluate(1, w));
  }
  TriRequestFunction q2{[](int n, int k, int s) { return (n == 1 && k == 3 && s == 5) ? Natural(2) : Natural(3); },
                        [](int n, int, int) { return n == 1; }, "q2"};
  EXPECT_EQ(lift_tri(q2).evaluate(1, 40), 2);
  EXPECT_EQ(lift_tri(q2).evaluate(1, 56), 2);  // same lambda and mu as 40
  EXPECT_EQ(lift_tri(q2).evaluate(0, 40), 1);  // off the domain: 2^(n+1) - 1
}

TEST(PopcountTest, ExamplesAndContract) {
  EXPECT_EQ(popcount_coloring(2), 1);
  EXPECT_EQ(popcount_coloring(3), 0);
  EXPECT_EQ(popcount_coloring(5), 0);
  for (std::uint64_t w = 1; w < (1u << 16); ++w) {
    Dyadic dw(w);
    for (int n = 0; n < dw.lambda(); ++n) {
      ASSERT_NE(popcount_coloring(dw), popcount_coloring(Dyadic(w + (std::uint64_t{1} << n))));
    }
  }
}

TEST(PopcountTest, IsTheMinimalRequestParity) {
  for (std::uint64_t w = 2; w < 512; ++w) {
    // c(2^s) = 0 for the tree, popcount(2^s) = 1.
    EXPECT_EQ(color_parity(minimal_request(), w), 1 - popcount_coloring(w));
  }
}

}  // namespace
}  // namespace hindman
