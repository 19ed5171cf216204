#include "hindman/report.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "hindman/catalog.hpp"
#include "hindman/errors.hpp"

namespace hindman {
namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  json j;
  in >> j;
  return j;
}

TEST(ConfigTest, RoundTrip) {
  const FixtureConfig c = standard_config();
  const json j = c.to_json();
  EXPECT_EQ(FixtureConfig::from_json(j).to_json(), j);
  EXPECT_EQ(j["delta3"][4]["delay"]["constant"], "5");
  EXPECT_EQ(j["guards"]["max_chain_bits"], "8");
}

TEST(ConfigTest, ShippedCatalogsMatchBuiltIns) {
  const FixtureConfig standard = standard_config();
  const FixtureConfig d = FixtureConfig::load(HINDMAN_SOURCE_DIR "/configs/delta3_catalog.json");
  const FixtureConfig p = FixtureConfig::load(HINDMAN_SOURCE_DIR "/configs/pi3_catalog.json");
  EXPECT_EQ(d.to_json()["delta3"], standard.to_json()["delta3"]);
  EXPECT_EQ(p.to_json()["pi3"], standard.to_json()["pi3"]);
  ASSERT_EQ(d.delta3.size(), standard_delta3_catalog().size());
  ASSERT_EQ(p.pi3.size(), standard_pi3_catalog().size());
  const Delta3Family built = standard_delta3_catalog(), loaded = d.delta3_family();
  for (std::size_t i = 0; i < built.size(); ++i) {
    for (std::uint64_t x = 1; x < 300; ++x) {
      for (int s : {0, 1, 3, 6}) EXPECT_EQ(loaded.approx(i, x, 2, s), built.approx(i, x, 2, s));
    }
  }
}

TEST(ConfigTest, IntegersAsStringsOrNumbers) {
  const json j = json::parse(R"({"delta3": [{"kind": "instant", "set": {"type": "list", "members": [2, "8"]}}],
                                  "guards": {"max_position": 40}})");
  const FixtureConfig c = FixtureConfig::from_json(j);
  EXPECT_TRUE(c.delta3[0].set.contains(8));
  EXPECT_EQ(c.guards.max_position, 40);
  EXPECT_EQ(c.guards.max_block_bits, Guards{}.max_block_bits);
}

TEST(ConfigTest, Rejections) {
  auto bad = [](const char* text) { return FixtureConfig::from_json(json::parse(text)); };
  EXPECT_THROW(bad(R"({"delta3": [{"index": "1", "kind": "instant", "set": {"type": "list", "members": []}}]})"),
               ConfigError);
  EXPECT_THROW(bad(R"({"delta3": [{"kind": "monotone", "set": {"type": "list", "members": []}}]})"), ConfigError);
  EXPECT_THROW(bad(R"({"pi3": [{"kind": "monotone", "set": {"type": "list", "members": []},
                                "schedule": {"ramp_per_stage": "0"}}]})"),
               ConfigError);
  EXPECT_THROW(bad(R"({"pi3": [{"kind": "monotone", "set": {"type": "powers", "multipliers": ["2"]}}]})"),
               ConfigError);
  EXPECT_THROW(bad(R"({"guards": {"max_block_bits": "0"}})"), ConfigError);
  EXPECT_THROW(bad(R"({"guards": {"max_colour": "3"}})"), ConfigError);
  EXPECT_THROW(bad(R"({"delta3": [{"kind": "instant", "set": {"type": "list", "members": ["-3"]}}]})"),
               std::exception);
  EXPECT_THROW(FixtureConfig::load("/nonexistent.json"), ConfigError);
}

TEST(ColoringIdTest, Registry) {
  const FixtureConfig c = standard_config();
  EXPECT_EQ(make_coloring("popcount", c)(7).str(), "(1)");
  EXPECT_EQ(make_coloring("c0", c)(12).str(), "(1,0)");
  const Coloring p = make_coloring("delta3*c0", c);
  EXPECT_EQ(p.arity(), 3u);
  EXPECT_EQ(p.name(), "delta3*c0");
  EXPECT_NE(p(40).components[0], p(42).components[0]);
  EXPECT_EQ(make_coloring("tree-default", c)(4).str(), "(0)");
  for (std::uint64_t w = 2; w < 64; ++w) {
    EXPECT_NE(make_coloring("tree-minimal", c)(w), make_coloring("popcount", c)(w));
  }
  EXPECT_EQ(make_coloring("tree-minimal", c)(1).str(), "(0)");
  EXPECT_THROW(make_coloring("delta4", c), ConfigError);
  EXPECT_EQ(make_stream("progression-1-3")(2), 7);
  EXPECT_THROW(make_stream("progression-0-3"), ConfigError);
}

TEST(ReportTest, WitnessReports) {
  const FixtureConfig c = standard_config();
  Delta3Construction d(c.delta3_family(), c.guards);
  const json r = delta3_report(c, *find_witness(d, 0).witness);
  EXPECT_EQ(r["witness"]["x"], "2");
  EXPECT_EQ(r["witness"]["w1"], "8");
  EXPECT_EQ(r["witness"]["w2"], "32");
  EXPECT_TRUE(verify_report(r));
  EXPECT_TRUE(verify_report(json::parse(r.dump())));

  Pi3Construction p(c.pi3_family(), c.guards);
  const json q = pi3_report(c, *find_witness(p, 0).witness);
  EXPECT_EQ(q["witness"]["n"], "1");
  EXPECT_EQ(q["witness"]["x"], "2");
  EXPECT_TRUE(verify_report(q));
}

TEST(ReportTest, TamperedReportsFail) {
  const FixtureConfig c = standard_config();
  Delta3Construction d(c.delta3_family(), c.guards);
  json r = delta3_report(c, *find_witness(d, 0).witness);
  r["witness"]["color_sum"] = r["witness"]["color_with_x"];
  EXPECT_FALSE(verify_report(r));

  json k = kill_report(c, "delta3", 3);
  k["sums"][1]["color"] = k["sums"][0]["color"];
  EXPECT_FALSE(verify_report(k));
  k = kill_report(c, "delta3", 3);
  k["set"] = json::array({"2", "4"});
  EXPECT_FALSE(verify_report(k));

  json e = extraction_report("naturals", ExtractionPolicy::earliest_end, 5, 4, c.guards);
  e["outputs"][2]["output"] = "5";
  EXPECT_FALSE(verify_report(e));

  EXPECT_THROW(verify_report(json{{"kind", "nothing"}}), ConfigError);
}

TEST(ReportTest, KillsEveryCatalogFixture) {
  const FixtureConfig c = standard_config();
  const std::vector<std::string> delta3_branches{"construction", "construction", "c0", "finite", "construction",
                                                 "construction"};
  const std::vector<std::string> pi3_branches{"construction", "construction", "c0", "finite"};
  for (std::size_t i = 0; i < c.delta3.size(); ++i) {
    const json r = kill_report(c, "delta3", static_cast<int>(i));
    EXPECT_EQ(r["branch"], delta3_branches[i]) << i;
    EXPECT_TRUE(verify_report(json::parse(r.dump()))) << i;
  }
  for (std::size_t i = 0; i < c.pi3.size(); ++i) {
    const json r = kill_report(c, "pi3", static_cast<int>(i));
    EXPECT_EQ(r["branch"], pi3_branches[i]) << i;
    EXPECT_TRUE(verify_report(json::parse(r.dump()))) << i;
  }
  const json finite = kill_report(c, "delta3", 3);
  EXPECT_EQ(finite["sums"][0]["value"], "2");
  EXPECT_EQ(finite["sums"][1]["value"], "10");
}

TEST(ReportTest, SearchReports) {
  const FixtureConfig c = standard_config();
  const json found = search_report(c, "c0", {2, 64, 3}, "none");
  EXPECT_EQ(found["outcome"], "found");
  EXPECT_EQ(found["set"], json::array({"1", "4", "16"}));
  EXPECT_TRUE(verify_report(found));
  const json none = search_report(c, "c0", {2, 64, 3}, "not-weak-apart");
  EXPECT_EQ(none["outcome"], "exhausted");
  EXPECT_TRUE(verify_report(none));

  // All finite sums of a set found for k = 2 are checked again, never assumed.
  for (int m = 2; m <= 4; ++m) {
    const json r = search_report(c, "popcount", {2, 24, m}, "none");
    if (r["outcome"] != "found") continue;
    std::vector<Natural> h;
    for (const json& x : r["set"]) h.push_back(decode_natural(x));
    const bool full = is_monochromatic(popcount_color(), NumberSet(h), std::nullopt);
    const json all = search_report(c, "popcount", {std::nullopt, 24, m}, "none");
    if (full) EXPECT_EQ(all["outcome"], "found");
    EXPECT_TRUE(verify_report(all));
  }
}

TEST(ReportTest, ExtractionReport) {
  const json r = extraction_report("progression-1-3", ExtractionPolicy::earliest_end, 10, 4, Guards{});
  EXPECT_EQ(r["outputs"].size(), 10u);
  EXPECT_EQ(r["outputs"][0]["output"], "1");
  EXPECT_TRUE(verify_report(r));
}

TEST(ReportTest, Deterministic) {
  const FixtureConfig c = standard_config();
  EXPECT_EQ(kill_report(c, "pi3", 1).dump(), kill_report(c, "pi3", 1).dump());
  EXPECT_EQ(search_report(c, "tree-random-7", {2, 32, 3}, "none").dump(),
            search_report(c, "tree-random-7", {2, 32, 3}, "none").dump());
}

}  // namespace
}  // namespace hindman
