#include "hindman/report.hpp"

#include <memory>

#include <boost/algorithm/string.hpp>

#include "hindman/errors.hpp"
#include "hindman/tree_coloring.hpp"

namespace hindman {

using nlohmann::json;

namespace {

// The tree on B^0 = {1} is a single vertex, so 1 gets color 0.
Coloring tree_color(const std::string& id, RequestFunction request) {
  auto tree = std::make_shared<TreeColoring>(std::move(request));
  return Coloring::scalar(id, 2, [tree](const Natural& x) { return x == 1 ? 0 : tree->parity(Dyadic(x)); });
}

Coloring base_coloring(const std::string& id, const FixtureConfig& config) {
  if (id == "popcount") return popcount_color();
  if (id == "c0") return weak_apartness_coloring();
  if (id == "tree-default") return tree_color(id, default_request());
  if (id == "tree-minimal") return tree_color(id, minimal_request());
  if (boost::starts_with(id, "tree-random-")) {
    return tree_color(id, random_request(static_cast<std::uint64_t>(decode_int(id.substr(12)))));
  }
  if (id == "delta3") {
    Delta3Construction c(config.delta3_family(), config.guards);
    return Coloring::scalar(id, 2, [c](const Natural& x) { return x == 1 ? 0 : c.color(x); });
  }
  if (id == "pi3") {
    Pi3Construction c(config.pi3_family(), config.guards);
    return Coloring::scalar(id, 2, [c](const Natural& x) { return x == 1 ? 0 : c.color(x); });
  }
  throw ConfigError("unknown coloring \"" + id + "\"");
}

json naturals(const std::vector<Natural>& xs) {
  json out = json::array();
  for (const Natural& x : xs) out.push_back(encode(x));
  return out;
}

std::vector<Natural> decode_naturals(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of integers");
  std::vector<Natural> out;
  for (const json& x : j) out.push_back(decode_natural(x));
  return out;
}

json ints(const std::vector<int>& xs) {
  json out = json::array();
  for (int x : xs) out.push_back(encode(x));
  return out;
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("report is missing \"") + key + "\"");
  return j.at(key);
}

int get_int(const json& j, const char* key) { return static_cast<int>(decode_int(at(j, key))); }
std::string get_string(const json& j, const char* key) { return at(j, key).get<std::string>(); }

const FamilySpec& fixture(const FixtureConfig& config, const std::string& family, int index) {
  const auto& list = family == "delta3" ? config.delta3 : config.pi3;
  if (family != "delta3" && family != "pi3") throw ConfigError("family must be delta3 or pi3");
  if (index < 0 || index >= static_cast<int>(list.size())) {
    throw ConfigError(family + " has no fixture " + std::to_string(index));
  }
  return list[index];
}

json delta3_witness_json(const Delta3Witness& w) {
  return json{{"index", encode(w.i)},      {"mode", w.mode},
              {"x", encode(w.x)},          {"w1", encode(w.w1)},
              {"w2", encode(w.w2)},        {"sum", encode(Natural(w.w1 + w.w2))},
              {"color_sum", encode(w.color_sum)}, {"color_with_x", encode(w.color_with_x)},
              {"limit", ints(w.limit)},    {"K", encode(w.K)},
              {"k", encode(w.k)},          {"s_k", encode(w.s_k)},
              {"s", encode(w.s)}};
}

Delta3Witness delta3_witness_from(const json& j) {
  Delta3Witness w;
  w.i = get_int(j, "index");
  w.mode = get_string(j, "mode");
  w.x = decode_natural(at(j, "x"));
  w.w1 = decode_natural(at(j, "w1"));
  w.w2 = decode_natural(at(j, "w2"));
  w.color_sum = get_int(j, "color_sum");
  w.color_with_x = get_int(j, "color_with_x");
  for (const json& n : at(j, "limit")) w.limit.push_back(static_cast<int>(decode_int(n)));
  w.K = get_int(j, "K");
  w.k = get_int(j, "k");
  w.s_k = get_int(j, "s_k");
  w.s = get_int(j, "s");
  return w;
}

json pi3_witness_json(const Pi3Witness& w) {
  return json{{"index", encode(w.i)},   {"n", encode(w.n)},
              {"chain", naturals(w.chain)}, {"sums", naturals(w.sums)},
              {"x", encode(w.x)},       {"w", encode(w.w)},
              {"color_w", encode(w.color_w)}, {"color_with_x", encode(w.color_with_x)}};
}

Pi3Witness pi3_witness_from(const json& j) {
  Pi3Witness w;
  w.i = get_int(j, "index");
  w.n = get_int(j, "n");
  w.chain = decode_naturals(at(j, "chain"));
  w.sums = decode_naturals(at(j, "sums"));
  w.x = decode_natural(at(j, "x"));
  w.w = decode_natural(at(j, "w"));
  w.color_w = get_int(j, "color_w");
  w.color_with_x = get_int(j, "color_with_x");
  return w;
}

std::string policy_name(ExtractionPolicy p) {
  return p == ExtractionPolicy::earliest_end ? "earliest-end" : "leftmost-start";
}

ExtractionPolicy policy_from(const std::string& name) {
  if (name == "earliest-end") return ExtractionPolicy::earliest_end;
  if (name == "leftmost-start") return ExtractionPolicy::leftmost_start;
  throw ConfigError("unknown extraction policy \"" + name + "\"");
}

json sum_entry(const std::vector<Natural>& terms, const Coloring& coloring) {
  Natural value = 0;
  for (const Natural& t : terms) value += t;
  return json{{"terms", naturals(terms)}, {"value", encode(value)}, {"color", coloring(value).str()}};
}

// Terms of a carry-free sum of elements of h.
std::vector<Natural> carry_free_terms(const NumberSet& h, const Natural& value) {
  std::vector<Natural> out;
  for (const Natural& e : h) {
    if ((value & e) == e) out.push_back(e);
  }
  return out;
}

// First two sums of at most k terms of h (subsets in mask order) with
// different colors.
std::optional<std::pair<json, json>> first_split(const NumberSet& h, std::optional<int> k, const Coloring& coloring,
                                                 const Guards& guards) {
  if (static_cast<int>(h.size()) > guards.max_sum_terms) throw GuardError("|H| exceeds max_sum_terms");
  const auto& xs = h.elements();
  std::optional<json> reference;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    if (k && __builtin_popcountll(mask) > *k) continue;
    std::vector<Natural> terms;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (mask >> j & 1) terms.push_back(xs[j]);
    }
    json entry = sum_entry(terms, coloring);
    if (!reference) {
      reference = entry;
    } else if (entry["color"] != (*reference)["color"]) {
      return std::make_pair(*reference, entry);
    }
  }
  return std::nullopt;
}

json with_common(json body, const std::string& kind, const std::string& claim, const FixtureConfig& config) {
  body["kind"] = kind;
  body["claim"] = claim;
  body["config"] = config.to_json();
  return body;
}

}  // namespace

Coloring make_coloring(const std::string& id, const FixtureConfig& config) {
  std::vector<std::string> parts;
  boost::split(parts, id, boost::is_any_of("*"));
  if (parts.size() == 1) return base_coloring(id, config);
  std::vector<Coloring> colorings;
  for (const std::string& p : parts) colorings.push_back(base_coloring(p, config));
  Coloring c = product(colorings);
  return Coloring(id, c.palette(), [c](const Natural& x) { return c(x); });
}

ApartExtractor::Stream make_stream(const std::string& id) {
  if (id == "naturals") return [](std::size_t j) { return Natural(j + 1); };
  if (id == "squares") return [](std::size_t j) { return Natural(j + 1) * Natural(j + 1); };
  if (boost::starts_with(id, "progression-")) {
    std::vector<std::string> parts;
    boost::split(parts, id, boost::is_any_of("-"));
    if (parts.size() == 3) {
      const Natural a = parse_natural(parts[1]), d = parse_natural(parts[2]);
      if (a >= 1 && d >= 1) return [a, d](std::size_t j) { return Natural(a + d * j); };
    }
  }
  throw ConfigError("unknown stream \"" + id + "\"");
}

std::function<bool(const NumberSet&)> make_filter(const std::string& id) {
  if (id == "none") return {};
  if (id == "not-weak-apart") return [](const NumberSet& h) { return !has_weak_apartness(h).holds; };
  throw ConfigError("unknown filter \"" + id + "\"");
}

json delta3_report(const FixtureConfig& config, const Delta3Witness& witness) {
  return with_common(json{{"witness", delta3_witness_json(witness)}}, "delta3-witness",
                     "x << w1 << w2 lie in the fixture set and the construction coloring separates w1 + w2 from "
                     "x + w1 + w2",
                     config);
}

json pi3_report(const FixtureConfig& config, const Pi3Witness& witness) {
  return with_common(json{{"witness", pi3_witness_json(witness)}}, "pi3-witness",
                     "R(n, w) = x lies in B^n and the fixture set, w is a sum of an apart chain from the fixture "
                     "set, and the construction coloring separates w from w + x",
                     config);
}

json search_report(const FixtureConfig& config, const std::string& coloring_id, const SearchQuery& query,
                   const std::string& filter) {
  const Coloring coloring = make_coloring(coloring_id, config);
  const SearchResult r = search_mono(coloring, query, make_filter(filter), config.guards);
  json body{{"coloring", coloring_id},
            {"k", query.max_terms ? json(encode(*query.max_terms)) : json(nullptr)},
            {"bound", encode(static_cast<long long>(query.bound))},
            {"size", encode(query.size)},
            {"filter", filter},
            {"nodes", encode(static_cast<long long>(r.nodes))}};
  std::string claim;
  if (r.found) {
    std::vector<Natural> h(r.found->begin(), r.found->end());
    body["outcome"] = "found";
    body["set"] = naturals(h);
    json colors = json::object();
    for (const auto& [sum, color] : r.colors) colors[std::to_string(sum)] = color.str();
    body["colors"] = colors;
    claim = "FS^{<=k}(H) is monochromatic for the first accepted m-subset H of [1, N] in lexicographic order";
  } else {
    body["outcome"] = "exhausted";
    claim = "no accepted m-subset of [1, N] has monochromatic FS^{<=k}";
  }
  return with_common(body, "search-mono", claim, FixtureConfig{{}, {}, config.guards});
}

json extraction_report(const std::string& stream_id, ExtractionPolicy policy, std::size_t count,
                       std::size_t fs_outputs, const Guards& guards) {
  ApartExtractor ex(make_stream(stream_id), policy, guards);
  json outputs = json::array();
  for (const ExtractionCertificate& c : ex.take(count)) {
    json indices = json::array();
    for (std::size_t j : c.indices) indices.push_back(encode(static_cast<long long>(j)));
    outputs.push_back(json{{"output", encode(c.output)}, {"indices", indices}, {"values", naturals(c.values)}});
  }
  json body{{"stream", stream_id},
            {"policy", policy_name(policy)},
            {"count", encode(static_cast<long long>(count))},
            {"fs_outputs", encode(static_cast<long long>(fs_outputs))},
            {"consumed", encode(static_cast<long long>(ex.consumed()))},
            {"outputs", outputs}};
  return with_common(body, "extraction",
                     "outputs are pairwise apart sums of disjoint consecutive stream blocks, and FS of the first "
                     "fs_outputs outputs lies in FS of the consumed prefix",
                     FixtureConfig{{}, {}, guards});
}

json kill_report(const FixtureConfig& config, const std::string& family, int index) {
  const FamilySpec& spec = fixture(config, family, index);
  const Guards& g = config.guards;
  const std::string coloring_id = family + "*c0";
  const Coloring coloring = make_coloring(coloring_id, config);
  json body{{"family", family}, {"index", encode(index)}, {"fixture", spec.name}, {"coloring", coloring_id}};

  NumberSet h;
  std::optional<int> k;
  std::optional<std::pair<json, json>> split;
  const ApartnessCheck weak = has_weak_apartness(NumberSet(spec.set.members_up_to(g.max_block_bits, g)));
  if (!weak.holds) {
    body["branch"] = "c0";
    h = NumberSet(weak.violation);
    k = 2;
    split = first_split(h, k, coloring, g);
  } else if (!spec.set.is_finite()) {
    body["branch"] = "construction";
    std::vector<Natural> terms_a, terms_b;
    if (family == "delta3") {
      Delta3Construction c(config.delta3_family(), g);
      const Delta3Search found = find_witness(c, index);
      if (!found.witness) throw VerificationError("no delta3 witness: " + found.reason);
      const Delta3Witness& w = *found.witness;
      body["witness"] = delta3_witness_json(w);
      h = NumberSet({w.x, w.w1, w.w2});
      k = 3;
      terms_a = {w.w1, w.w2};
      terms_b = {w.x, w.w1, w.w2};
    } else {
      Pi3Construction c(config.pi3_family(), g);
      const Pi3Search found = find_witness(c, index);
      if (!found.witness) throw VerificationError("no pi3 witness: " + found.reason);
      const Pi3Witness& w = *found.witness;
      body["witness"] = pi3_witness_json(w);
      std::vector<Natural> members = w.chain;
      members.push_back(w.x);
      h = NumberSet(members);
      terms_a = carry_free_terms(NumberSet(w.chain), w.w);
      terms_b = terms_a;
      terms_b.push_back(w.x);
      std::sort(terms_b.begin(), terms_b.end());
    }
    json a = sum_entry(terms_a, coloring), b = sum_entry(terms_b, coloring);
    if (a["color"] != b["color"]) split = std::make_pair(a, b);
  } else {
    body["branch"] = "finite";
    h = NumberSet(spec.set.members_up_to(g.max_block_bits, g));
    split = first_split(h, k, coloring, g);
  }
  if (!split) throw VerificationError("fixture " + spec.name + " was not killed");
  body["set"] = naturals(h.elements());
  body["k"] = k ? json(encode(*k)) : json(nullptr);
  body["sums"] = json::array({split->first, split->second});
  return with_common(body, "kill",
                     "H is a finite subset of the fixture set and two members of FS^{<=k}(H) get different colors "
                     "under the product coloring",
                     config);
}

namespace {

void verify_kill(const json& r, const FixtureConfig& config, CheckResult& out) {
  auto fail = [&](std::string m) { out.failures.push_back(std::move(m)); };
  const std::string family = get_string(r, "family");
  const int index = get_int(r, "index");
  const FamilySpec& spec = fixture(config, family, index);
  const std::string coloring_id = get_string(r, "coloring");
  if (coloring_id != family + "*c0") fail("coloring is not the product " + family + "*c0");
  const Coloring coloring = make_coloring(coloring_id, config);
  const NumberSet h(decode_naturals(at(r, "set")));
  if (h.size() != at(r, "set").size()) fail("H has repeated elements");
  for (const Natural& x : h) {
    if (!spec.set.contains(x)) fail(x.str() + " is not in fixture " + spec.name);
  }
  std::optional<int> k;
  if (!at(r, "k").is_null()) k = get_int(r, "k");
  const json& sums = at(r, "sums");
  if (!sums.is_array() || sums.size() != 2) {
    fail("expected exactly two sums");
    return;
  }
  std::vector<std::vector<Natural>> terms;
  std::vector<Natural> values;
  std::vector<ProductColor> colors;
  for (const json& s : sums) {
    const std::vector<Natural> t = decode_naturals(at(s, "terms"));
    const NumberSet ts(t);
    if (ts.empty() || ts.size() != t.size()) fail("sum terms are empty or repeated");
    if (!ts.is_subset_of(h)) fail("sum terms are not in H");
    if (k && static_cast<int>(t.size()) > *k) fail("sum uses more than k terms");
    Natural v = 0;
    for (const Natural& x : t) v += x;
    if (v != decode_natural(at(s, "value"))) fail("sum value " + at(s, "value").dump() + " is wrong");
    const ProductColor c = coloring(v);
    if (c.str() != get_string(s, "color")) fail("color of " + v.str() + " is " + c.str());
    terms.push_back(ts.elements());
    values.push_back(v);
    colors.push_back(c);
  }
  if (colors.size() == 2 && colors[0] == colors[1]) fail("the two sums have the same color");

  const std::string branch = get_string(r, "branch");
  if (branch == "c0") {
    if (has_weak_apartness(h).holds) fail("H has weak apartness, so c0 is not the killing component");
  } else if (branch == "finite") {
    if (!spec.set.is_finite()) fail("fixture is not finite");
    else if (h.elements() != spec.set.members_up_to(config.guards.max_block_bits, config.guards))
      fail("H is not the whole finite fixture");
  } else if (branch == "construction") {
    const json& wj = at(r, "witness");
    if (family == "delta3") {
      const Delta3Witness w = delta3_witness_from(wj);
      if (w.i != index) fail("witness index differs");
      for (const std::string& m : verify_witness(config.delta3_family(), w, config.guards).failures) fail(m);
      if (h.elements() != NumberSet({w.x, w.w1, w.w2}).elements()) fail("H is not {x, w1, w2}");
      if (values.size() == 2 && (values[0] != w.w1 + w.w2 || values[1] != w.x + w.w1 + w.w2)) {
        fail("sums are not w1 + w2 and x + w1 + w2");
      }
    } else {
      const Pi3Witness w = pi3_witness_from(wj);
      if (w.i != index) fail("witness index differs");
      for (const std::string& m : verify_witness(config.pi3_family(), w, config.guards).failures) fail(m);
      if (values.size() == 2 && (values[0] != w.w || values[1] != w.w + w.x)) fail("sums are not w and w + x");
    }
  } else {
    fail("unknown branch \"" + branch + "\"");
  }
}

void verify_search(const json& r, CheckResult& out) {
  auto fail = [&](std::string m) { out.failures.push_back(std::move(m)); };
  const FixtureConfig config = FixtureConfig::from_json(at(r, "config"));
  SearchQuery q;
  if (!at(r, "k").is_null()) q.max_terms = get_int(r, "k");
  q.bound = static_cast<std::uint64_t>(decode_int(at(r, "bound")));
  q.size = get_int(r, "size");
  const std::string filter = get_string(r, "filter");
  const std::string coloring_id = get_string(r, "coloring");
  const Coloring coloring = make_coloring(coloring_id, config);
  const std::string outcome = get_string(r, "outcome");
  if (outcome == "found") {
    const std::vector<Natural> listed = decode_naturals(at(r, "set"));
    const NumberSet h(listed);
    if (static_cast<int>(h.size()) != q.size || listed.size() != h.size()) fail("H does not have m distinct elements");
    if (!h.empty() && (h.front() < 1 || h.back() > q.bound)) fail("H leaves [1, N]");
    if (auto f = make_filter(filter); f && !f(h)) fail("H is rejected by the filter");
    if (!is_monochromatic(coloring, h, q.max_terms, config.guards)) fail("FS^{<=k}(H) is not monochromatic");
    const json& colors = at(r, "colors");
    const NumberSet sums = finite_sums(h, q.max_terms, config.guards);
    if (colors.size() != sums.size()) fail("color table does not list FS^{<=k}(H)");
    for (const Natural& s : sums) {
      const std::string key = s.str();
      if (!colors.contains(key) || colors.at(key).get<std::string>() != coloring(s).str()) {
        fail("color table entry for " + key + " is wrong");
      }
    }
  } else if (outcome != "exhausted") {
    fail("unknown outcome \"" + outcome + "\"");
    return;
  }
  const SearchResult again = search_mono(coloring, q, make_filter(filter), config.guards);
  if (again.found.has_value() != (outcome == "found")) fail("rerunning the search gives a different outcome");
  if (again.found && outcome == "found") {
    std::vector<Natural> h(again.found->begin(), again.found->end());
    if (naturals(h) != at(r, "set")) fail("rerunning the search finds a different first set");
  }
}

void verify_extraction_report(const json& r, CheckResult& out) {
  auto fail = [&](std::string m) { out.failures.push_back(std::move(m)); };
  const FixtureConfig config = FixtureConfig::from_json(at(r, "config"));
  const auto stream = make_stream(get_string(r, "stream"));
  std::vector<ExtractionCertificate> certs;
  for (const json& o : at(r, "outputs")) {
    ExtractionCertificate c;
    c.output = decode_natural(at(o, "output"));
    for (const json& j : at(o, "indices")) c.indices.push_back(static_cast<std::size_t>(decode_int(j)));
    c.values = decode_naturals(at(o, "values"));
    certs.push_back(std::move(c));
  }
  if (certs.size() != static_cast<std::size_t>(decode_int(at(r, "count")))) fail("output count differs");
  const auto fs = static_cast<std::size_t>(decode_int(at(r, "fs_outputs")));
  for (const std::string& m : verify_extraction(certs, stream, fs, config.guards).failures) fail(m);
  ApartExtractor ex(stream, policy_from(get_string(r, "policy")), config.guards);
  const auto again = ex.take(certs.size());
  for (std::size_t b = 0; b < certs.size(); ++b) {
    if (again[b].output != certs[b].output || again[b].indices != certs[b].indices) {
      fail("rerunning the extraction differs at output " + std::to_string(b + 1));
    }
  }
  if (ex.consumed() != static_cast<std::size_t>(decode_int(at(r, "consumed")))) fail("consumed prefix differs");
}

}  // namespace

CheckResult verify_report(const json& r) {
  CheckResult out;
  const std::string kind = get_string(r, "kind");
  if (kind == "delta3-witness") {
    const FixtureConfig config = FixtureConfig::from_json(at(r, "config"));
    const Delta3Witness w = delta3_witness_from(at(r, "witness"));
    out = verify_witness(config.delta3_family(), w, config.guards);
    if (decode_natural(at(at(r, "witness"), "sum")) != w.w1 + w.w2) out.failures.push_back("sum is not w1 + w2");
  } else if (kind == "pi3-witness") {
    const FixtureConfig config = FixtureConfig::from_json(at(r, "config"));
    out = verify_witness(config.pi3_family(), pi3_witness_from(at(r, "witness")), config.guards);
  } else if (kind == "kill") {
    verify_kill(r, FixtureConfig::from_json(at(r, "config")), out);
  } else if (kind == "search-mono") {
    verify_search(r, out);
  } else if (kind == "extraction") {
    verify_extraction_report(r, out);
  } else {
    throw ConfigError("unknown report kind \"" + kind + "\"");
  }
  return out;
}

}  // namespace hindman
