#include "hindman/config.hpp"

#include <fstream>

#include "hindman/catalog.hpp"

namespace hindman {

using nlohmann::json;

json encode(const Natural& x) { return x.str(); }
json encode(long long x) { return std::to_string(x); }

Natural decode_natural(const json& j) {
  if (j.is_string()) return parse_natural(j.get<std::string>());
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<long long>() >= 0) return Natural(j.get<long long>());
  throw ConfigError("expected a non-negative integer, got " + j.dump());
}

long long decode_int(const json& j) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == s.size() && !s.empty()) return v;
  }
  throw ConfigError("expected an integer, got " + j.dump());
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int small_int(const json& j) { return static_cast<int>(decode_int(j)); }

}  // namespace

json set_to_json(const SetDescriptor& set) {
  json out;
  switch (set.kind()) {
    case SetDescriptor::Kind::list: {
      out["type"] = "list";
      json members = json::array();
      for (const Natural& x : set.members()) members.push_back(encode(x));
      out["members"] = members;
      break;
    }
    case SetDescriptor::Kind::scaled_powers: {
      out["type"] = "powers";
      json mults = json::array();
      for (const Natural& m : set.multipliers()) mults.push_back(encode(m));
      out["multipliers"] = mults;
      const ExponentFilter& f = set.filter();
      json e{{"modulus", encode(f.modulus)}, {"residue", encode(f.residue)}, {"min", encode(f.min)}};
      if (f.max) e["max"] = encode(*f.max);
      out["exponent"] = e;
      break;
    }
    case SetDescriptor::Kind::predicate:
      throw ConfigError("predicate sets cannot be serialized: " + set.description());
  }
  return out;
}

SetDescriptor set_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "list") {
    std::vector<Natural> members;
    for (const json& m : field(j, "members")) members.push_back(decode_natural(m));
    try {
      return SetDescriptor::list(NumberSet(std::move(members)));
    } catch (const DomainError& ex) {
      throw ConfigError(ex.what());
    }
  }
  if (type == "powers") {
    std::vector<Natural> mults;
    for (const json& m : field(j, "multipliers")) mults.push_back(decode_natural(m));
    ExponentFilter f;
    if (j.contains("exponent")) {
      const json& e = j.at("exponent");
      if (e.contains("modulus")) f.modulus = small_int(e.at("modulus"));
      if (e.contains("residue")) f.residue = small_int(e.at("residue"));
      if (e.contains("min")) f.min = small_int(e.at("min"));
      if (e.contains("max") && !e.at("max").is_null()) f.max = small_int(e.at("max"));
    }
    try {
      return SetDescriptor::scaled_powers(std::move(mults), f);
    } catch (const DomainError& ex) {
      throw ConfigError(ex.what());
    }
  }
  throw ConfigError("unknown set type \"" + type + "\"");
}

json guards_to_json(const Guards& g) {
  return json{{"max_block_bits", encode(g.max_block_bits)},
              {"max_tree_bits", encode(g.max_tree_bits)},
              {"max_sum_terms", encode(g.max_sum_terms)},
              {"max_chain_bits", encode(g.max_chain_bits)},
              {"max_request_bits", encode(g.max_request_bits)},
              {"max_position", encode(g.max_position)},
              {"max_chain_position", encode(g.max_chain_position)},
              {"blind_bound_bits", encode(g.blind_bound_bits)},
              {"max_search_subsets", encode(static_cast<long long>(g.max_search_subsets))}};
}

Guards guards_from_json(const json& j, Guards g) {
  if (!j.is_object()) throw ConfigError("guards must be an object");
  for (const auto& [key, value] : j.items()) {
    const long long v = decode_int(value);
    if (v <= 0) throw ConfigError("guard " + key + " must be positive");
    const int iv = static_cast<int>(v);
    if (key == "max_block_bits") g.max_block_bits = iv;
    else if (key == "max_tree_bits") g.max_tree_bits = iv;
    else if (key == "max_sum_terms") g.max_sum_terms = iv;
    else if (key == "max_chain_bits") g.max_chain_bits = iv;
    else if (key == "max_request_bits") g.max_request_bits = iv;
    else if (key == "max_position") g.max_position = iv;
    else if (key == "max_chain_position") g.max_chain_position = iv;
    else if (key == "blind_bound_bits") g.blind_bound_bits = iv;
    else if (key == "max_search_subsets") g.max_search_subsets = static_cast<std::uint64_t>(v);
    else throw ConfigError("unknown guard \"" + key + "\"");
  }
  return g;
}

namespace {

json spec_to_json(const FamilySpec& f, std::size_t index) {
  json out{{"index", encode(static_cast<long long>(index))}, {"name", f.name}, {"kind", f.kind},
           {"set", set_to_json(f.set)}};
  if (f.kind == "delayed") {
    out["delay"] = json{{"constant", encode(f.delay.constant)}, {"per_k", encode(f.delay.per_k)},
                        {"per_mu", encode(f.delay.per_mu)}};
  }
  if (f.kind == "monotone") {
    out["schedule"] = json{{"ceiling_constant", encode(f.schedule.ceiling_constant)},
                           {"ceiling_per_y", encode(f.schedule.ceiling_per_y)},
                           {"ramp_per_stage", encode(f.schedule.ramp_per_stage)}};
  }
  return out;
}

std::vector<FamilySpec> specs_from_json(const json& j, bool monotone) {
  if (!j.is_array()) throw ConfigError("family lists must be arrays");
  std::vector<FamilySpec> out;
  for (std::size_t pos = 0; pos < j.size(); ++pos) {
    const json& e = j[pos];
    if (e.contains("index") && decode_int(e.at("index")) != static_cast<long long>(pos)) {
      throw ConfigError("family indices must be dense from 0 (entry " + std::to_string(pos) + ")");
    }
    FamilySpec f;
    f.kind = field(e, "kind").get<std::string>();
    f.set = set_from_json(field(e, "set"));
    f.name = e.contains("name") ? e.at("name").get<std::string>() : f.set.description();
    if (monotone) {
      if (f.kind != "monotone") throw ConfigError("pi3 families must have kind \"monotone\"");
      if (e.contains("schedule")) {
        const json& s = e.at("schedule");
        if (s.contains("ceiling_constant")) f.schedule.ceiling_constant = decode_int(s.at("ceiling_constant"));
        if (s.contains("ceiling_per_y")) f.schedule.ceiling_per_y = decode_int(s.at("ceiling_per_y"));
        if (s.contains("ramp_per_stage")) f.schedule.ramp_per_stage = decode_int(s.at("ramp_per_stage"));
      }
      try {
        monotone_entry(f.set, f.schedule, f.name);
      } catch (const DomainError& ex) {
        throw ConfigError(f.name + ": " + ex.what());
      }
    } else {
      if (f.kind != "instant" && f.kind != "delayed") {
        throw ConfigError("delta3 families must have kind \"instant\" or \"delayed\"");
      }
      if (f.kind == "delayed") {
        const json& d = field(e, "delay");
        if (d.contains("constant")) f.delay.constant = small_int(d.at("constant"));
        if (d.contains("per_k")) f.delay.per_k = small_int(d.at("per_k"));
        if (d.contains("per_mu")) f.delay.per_mu = small_int(d.at("per_mu"));
        if (f.delay.per_k < 0 || f.delay.per_mu < 0) throw ConfigError(f.name + ": delay slopes must be >= 0");
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

Delta3Family FixtureConfig::delta3_family() const {
  std::vector<Delta3Entry> entries;
  for (const FamilySpec& f : delta3) {
    entries.push_back(f.kind == "delayed" ? delayed_entry(f.set, f.delay, f.name) : instant_entry(f.set, f.name));
  }
  return Delta3Family(std::move(entries));
}

MonotoneFamily FixtureConfig::pi3_family() const {
  std::vector<MonotoneEntry> entries;
  for (const FamilySpec& f : pi3) entries.push_back(monotone_entry(f.set, f.schedule, f.name));
  return MonotoneFamily(std::move(entries));
}

json FixtureConfig::to_json() const {
  json d = json::array(), p = json::array();
  for (std::size_t i = 0; i < delta3.size(); ++i) d.push_back(spec_to_json(delta3[i], i));
  for (std::size_t i = 0; i < pi3.size(); ++i) p.push_back(spec_to_json(pi3[i], i));
  return json{{"delta3", d}, {"pi3", p}, {"guards", guards_to_json(guards)}};
}

FixtureConfig FixtureConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be an object");
  FixtureConfig c;
  if (j.contains("delta3")) c.delta3 = specs_from_json(j.at("delta3"), false);
  if (j.contains("pi3")) c.pi3 = specs_from_json(j.at("pi3"), true);
  if (j.contains("guards")) c.guards = guards_from_json(j.at("guards"));
  return c;
}

FixtureConfig FixtureConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ConfigError(path + ": " + ex.what());
  }
  return from_json(j);
}

FixtureConfig standard_config() {
  const auto odd = odd_powers(), even = even_powers(), mixed = powers_and_triples(), finite = two_and_eight();
  FixtureConfig c;
  c.delta3 = {
      {"odd powers", "instant", odd, {}, {}},
      {"even powers", "instant", even, {}, {}},
      {"powers and triples", "instant", mixed, {}, {}},
      {"{2, 8}", "instant", finite, {}, {}},
      {"odd powers, delay 5", "delayed", odd, {5, 0, 0}, {}},
      {"even powers, delay 2 + k", "delayed", even, {2, 1, 0}, {}},
  };
  c.pi3 = {
      {"odd powers", "monotone", odd, {}, {0, 0, 1}},
      {"even powers, ceiling 2 + y", "monotone", even, {}, {2, 1, 1}},
      {"powers and triples", "monotone", mixed, {}, {0, 0, 1}},
      {"{2, 8}", "monotone", finite, {}, {0, 0, 1}},
  };
  return c;
}

}  // namespace hindman
