#include "hindman/apartness.hpp"

#include <gtest/gtest.h>

#include "hindman/errors.hpp"
#include "hindman/search.hpp"

namespace hindman {
namespace {

TEST(ParityTest, Examples) {
  EXPECT_EQ(mu_parity(5), 0);
  EXPECT_EQ(lambda_parity(5), 0);
  EXPECT_EQ(mu_parity(12), 1);
  EXPECT_EQ(lambda_parity(12), 0);
  for (int s = 0; s < 70; ++s) {
    Dyadic x(pow2(s));
    EXPECT_EQ(mu_parity(x), s % 2);
    EXPECT_EQ(lambda_parity(x), s % 2);
  }
}

TEST(KillerTest, Examples) {
  Coloring c0 = weak_apartness_coloring();
  EXPECT_NE(c0(5), c0(11));
  EXPECT_FALSE(is_monochromatic(c0, NumberSet{5, 6}, 2));
  EXPECT_EQ(2 % 8, 10 % 8);
  EXPECT_NE(c0(12), c0(2));
  EXPECT_FALSE(is_monochromatic(c0, NumberSet{2, 6, 10}, 2));
  EXPECT_TRUE(is_monochromatic(c0, NumberSet{4, 16, 64}, 2));
  EXPECT_EQ(c0(4), (ProductColor{{0, 0}}));
}

TEST(KillerTest, ExhaustiveSmallCases) {
  ExhaustiveCount pairs = check_equal_mu_pairs(9);
  EXPECT_EQ(pairs.exceptions, 0u);
  std::uint64_t expected_pairs = 0;
  for (int m = 0; m < 9; ++m) expected_pairs += binomial(std::uint64_t{1} << m, 2);
  EXPECT_EQ(pairs.cases, expected_pairs);

  ExhaustiveCount triples = check_equal_lambda_triples(9);
  EXPECT_EQ(triples.exceptions, 0u);
  EXPECT_EQ(triples.cases, binomial(256, 3) + binomial(128, 3) + binomial(64, 3) + binomial(32, 3) +
                               binomial(16, 3) + binomial(8, 3) + binomial(4, 3));
}

TEST(KillerTest, TriangleCountMatchesBruteForce) {
  // lambda_parity(x1 + x2) == lambda(x) mod 2 pairs exist, so the triangle
  // count is a real check; compare with direct triple enumeration.
  Coloring c0 = weak_apartness_coloring();
  std::uint64_t brute = 0;
  for (std::uint64_t a = 1; a < 128; a += 2) {
    for (std::uint64_t b = a + 2; b < 128; b += 2) {
      for (std::uint64_t c = b + 2; c < 128; c += 2) {
        auto same = [](std::uint64_t x, std::uint64_t y) { return lambda_parity(Dyadic(x + y)) == 0; };
        if (same(a, b) && same(a, c) && same(b, c)) ++brute;
        ASSERT_FALSE(is_monochromatic(c0, NumberSet{a, b, c}, 2));
      }
    }
  }
  EXPECT_EQ(brute, 0u);
  EXPECT_EQ(check_equal_lambda_triples(7).exceptions, brute);
}

TEST(ProductTest, ArityAndComponents) {
  Coloring c0 = weak_apartness_coloring();
  Coloring p = product({popcount_color(), c0});
  EXPECT_EQ(p.arity(), 3u);
  EXPECT_EQ(p.color_count(), 8u);
  EXPECT_EQ(p(12), (ProductColor{{0, 1, 0}}));
  Coloring single = product({c0});
  for (std::uint64_t x = 1; x < 100; ++x) EXPECT_EQ(single(x), c0(x));
  // Monochromatic under the product iff under every component.
  for (std::uint64_t a = 1; a < 40; ++a) {
    for (std::uint64_t b = a + 1; b < 40; ++b) {
      NumberSet h{a, b};
      EXPECT_EQ(is_monochromatic(p, h, 2),
                is_monochromatic(popcount_color(), h, 2) && is_monochromatic(c0, h, 2));
    }
  }
}

std::vector<std::uint64_t> outputs(const std::vector<ExtractionCertificate>& certs) {
  std::vector<std::uint64_t> out;
  for (const auto& c : certs) out.push_back(c.output.convert_to<std::uint64_t>());
  return out;
}

TEST(ExtractionTest, LeftmostStartExample) {
  auto naturals = [](std::size_t i) { return Natural(i + 1); };
  ApartExtractor ex(naturals, ExtractionPolicy::leftmost_start);
  auto certs = ex.take(3);
  EXPECT_EQ(outputs(certs), (std::vector<std::uint64_t>{1, 2, 12}));
  EXPECT_EQ(certs[2].values, (std::vector<Natural>{3, 4, 5}));
  EXPECT_TRUE(verify_extraction(certs, naturals, 3).ok());
  // The window doubles with the last output; the seventh output needs 2^24 terms.
  Guards guards;
  ApartExtractor guarded(naturals, ExtractionPolicy::leftmost_start, guards);
  EXPECT_THROW(guarded.take(7), GuardError);
}

TEST(ExtractionTest, EarliestEnd) {
  auto naturals = [](std::size_t i) { return Natural(i + 1); };
  ApartExtractor ex(naturals);
  auto certs = ex.take(10);
  EXPECT_EQ(outputs(certs), (std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32, 64, 128, 256, 512}));
  auto check = verify_extraction(certs, naturals, 4);
  EXPECT_TRUE(check.ok()) << (check.ok() ? "" : check.failures.front());

  auto progression = [](std::size_t i) { return Natural(3 * i + 1); };
  ApartExtractor ap(progression);
  auto ap_certs = ap.take(10);
  EXPECT_TRUE(verify_extraction(ap_certs, progression, 4).ok());
  for (std::size_t b = 0; b + 1 < ap_certs.size(); ++b) {
    EXPECT_TRUE(apart(Dyadic(ap_certs[b].output), Dyadic(ap_certs[b + 1].output)));
  }

  auto squares = [](std::size_t i) { return Natural((i + 1) * (i + 1)); };
  ApartExtractor sq(squares);
  EXPECT_TRUE(verify_extraction(sq.take(8), squares, 4).ok());
}

TEST(ExtractionTest, TamperedCertificatesFail) {
  auto naturals = [](std::size_t i) { return Natural(i + 1); };
  auto certs = ApartExtractor(naturals).take(5);
  auto bad = certs;
  bad[2].output += 1;
  EXPECT_FALSE(verify_extraction(bad, naturals).ok());
  bad = certs;
  bad[3].indices = bad[2].indices;
  bad[3].values = bad[2].values;
  bad[3].output = bad[2].output;
  EXPECT_FALSE(verify_extraction(bad, naturals).ok());
}

TEST(ExtractionTest, RejectsDecreasingStreams) {
  ApartExtractor ex([](std::size_t i) { return Natural(100 - i); });
  EXPECT_THROW(ex.take(3), DomainError);
}

TEST(SearchTest, Examples) {
  Coloring c0 = weak_apartness_coloring();
  SearchResult r = search_mono(c0, {2, 64, 3});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(*r.found, (std::vector<std::uint64_t>{1, 4, 16}));  // first in lexicographic order
  EXPECT_EQ(r.colors.size(), 6u);

  auto not_weak = [](const NumberSet& h) { return !has_weak_apartness(h); };
  SearchResult filtered = search_mono(c0, {2, 64, 3}, not_weak);
  EXPECT_FALSE(filtered.found);
  EXPECT_FALSE(search_mono(c0, {2, 64, 2}, not_weak).found);

  SearchResult pc = search_mono(popcount_color(), {2, 16, 2});
  ASSERT_TRUE(pc.found);
  std::vector<Natural> h(pc.found->begin(), pc.found->end());
  EXPECT_TRUE(is_monochromatic(popcount_color(), NumberSet(h), 2));
}

TEST(SearchTest, AgreesWithBruteForce) {
  Coloring c0 = weak_apartness_coloring();
  for (int k : {1, 2, 3}) {
    SearchResult r = search_mono(c0, {k, 24, 3});
    std::optional<std::vector<std::uint64_t>> brute;
    for (std::uint64_t a = 1; a <= 24 && !brute; ++a) {
      for (std::uint64_t b = a + 1; b <= 24 && !brute; ++b) {
        for (std::uint64_t c = b + 1; c <= 24 && !brute; ++c) {
          if (is_monochromatic(c0, NumberSet{a, b, c}, k)) brute = std::vector<std::uint64_t>{a, b, c};
        }
      }
    }
    EXPECT_EQ(r.found, brute) << "k=" << k;
    if (r.found) {
      std::vector<Natural> h(r.found->begin(), r.found->end());
      EXPECT_TRUE(is_monochromatic(c0, NumberSet(h), k));
    }
  }
}

TEST(SearchTest, Guards) {
  Coloring c0 = weak_apartness_coloring();
  EXPECT_THROW(search_mono(c0, {2, 1000, 6}), GuardError);
  EXPECT_THROW(search_mono(c0, {2, 10, 1}), DomainError);
  EXPECT_EQ(binomial(64, 3), 41664u);
  EXPECT_EQ(binomial(10000, 5000), UINT64_MAX);
}

}  // namespace
}  // namespace hindman
