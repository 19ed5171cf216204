#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hindman/approx_families.hpp"
#include "hindman/config.hpp"
#include "hindman/errors.hpp"
#include "hindman/report.hpp"
#include "hindman/tree_coloring.hpp"

using namespace hindman;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  std::map<std::string, long long> guards;
};

FixtureConfig load_config(const Options& o) {
  FixtureConfig c = o.config_path.empty() ? standard_config() : FixtureConfig::load(o.config_path);
  json overrides = json::object();
  for (const auto& [name, value] : o.guards) overrides[name] = value;
  c.guards = guards_from_json(overrides, c.guards);
  return c;
}

void emit(const Options& o, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw ConfigError("cannot write " + o.out_path);
  out << text;
}

void validate(const FixtureConfig& c, const std::string& family) {
  const ValidationReport r = family == "delta3" ? validate_family(c.delta3_family()) : validate_family(c.pi3_family());
  if (!r.ok()) {
    std::string msg = family + " family failed validation:";
    for (const std::string& v : r.violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
}

int self_check(const json& report) {
  const CheckResult r = verify_report(report);
  for (const std::string& f : r.failures) std::cerr << "verification failure: " << f << "\n";
  return r.ok() ? 0 : 1;
}

RequestFunction request_by_name(const std::string& name, std::uint64_t seed) {
  if (name == "default") return default_request();
  if (name == "minimal") return minimal_request();
  if (name == "random") return random_request(seed);
  if (name == "random-profile") return random_profile_request(seed);
  throw ConfigError("unknown request \"" + name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive colorings for Hindman's theorem: evaluation, witnesses and reports"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "Fixture config (JSON); default is the built-in catalog");
  app.add_option("--out", o.out_path, "Write the report here instead of stdout");
  app.add_option("--seed", o.seed, "Seed for random request functions");
  for (const std::string name : {"max_block_bits", "max_tree_bits", "max_sum_terms", "max_chain_bits",
                                 "max_request_bits", "max_position", "max_chain_position", "blind_bound_bits",
                                 "max_search_subsets"}) {
    std::string flag = "--guard-" + name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app.add_option_function<long long>(flag, [&o, name](long long v) { o.guards[name] = v; }, "Override " + name);
  }

  std::string coloring = "popcount";
  std::string from = "1", to = "8";
  auto* eval = app.add_subcommand("eval", "Print colors of w in [from, to]");
  eval->add_option("--coloring", coloring, "popcount, c0, tree-default, tree-minimal, tree-random-<seed>, "
                                           "delta3, pi3, or a product like delta3*c0");
  eval->add_option("--from", from);
  eval->add_option("--to", to);

  std::string request = "default";
  int max_s = 12;
  auto* tree = app.add_subcommand("tree", "Request trees");
  tree->require_subcommand(1);
  auto* tree_check = tree->add_subcommand("check", "Tree shape and evaluator agreement for s <= max-s");
  tree_check->add_option("--request", request, "default, minimal, random, random-profile");
  tree_check->add_option("--max-s", max_s);

  std::string filter = "none";
  int k = 2, size = 3;
  std::uint64_t bound = 64;
  auto* search = app.add_subcommand("search-mono", "First m-subset of [1, N] with monochromatic FS^{<=k}");
  search->add_option("--coloring", coloring);
  search->add_option("-k", k, "Sum-size cap; 0 means all finite sums");
  search->add_option("--bound", bound, "N");
  search->add_option("--size", size, "m");
  search->add_option("--filter", filter, "none or not-weak-apart");

  int index = 0;
  bool blind = false;
  int blind_bits = 12;
  auto* delta3 = app.add_subcommand("delta3", "Delta^0_3 construction");
  delta3->require_subcommand(1);
  auto* delta3_witness = delta3->add_subcommand("witness", "Witness report for one fixture");
  delta3_witness->add_option("--index", index);
  delta3_witness->add_flag("--blind", blind, "Search x << w1 << w2 directly instead of following the oracles");
  delta3_witness->add_option("--bound", blind_bits, "Blind mode: values below 2^bound");

  auto* pi3 = app.add_subcommand("pi3", "Pi^0_3 construction");
  pi3->require_subcommand(1);
  auto* pi3_witness = pi3->add_subcommand("witness", "Witness report for one fixture");
  pi3_witness->add_option("--index", index);

  std::string stream = "naturals", policy = "earliest-end";
  std::size_t count = 10, fs_outputs = 4;
  auto* apartness = app.add_subcommand("apartness", "Apartness tools");
  apartness->require_subcommand(1);
  auto* extract = apartness->add_subcommand("extract", "Apart block sums of an increasing stream");
  extract->add_option("--stream", stream, "naturals, squares, progression-<a>-<d>");
  extract->add_option("--count", count);
  extract->add_option("--fs-outputs", fs_outputs);
  extract->add_option("--policy", policy, "earliest-end or leftmost-start");

  std::string family = "delta3";
  auto* kill = app.add_subcommand("kill", "Two sums of the fixture with different product colors");
  kill->add_option("--family", family, "delta3 or pi3");
  kill->add_option("--index", index);

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Recompute a report");
  verify->add_option("report", report_path)->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check both fixture families against their oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      const FixtureConfig config = load_config(o);
      const Coloring c = make_coloring(coloring, config);
      std::cout << "# coloring " << c.name() << " arity " << c.arity() << " colors " << c.color_count() << "\n";
      const Natural lo = parse_natural(from), hi = parse_natural(to);
      if (lo < 1 || hi < lo) throw ConfigError("need 1 <= from <= to");
      if (hi - lo >= Natural(1) << config.guards.max_block_bits) throw GuardError("range exceeds 2^max_block_bits");
      for (Natural w = lo; w <= hi; ++w) std::cout << w << " " << c(w).str() << "\n";
      return 0;
    }
    if (tree_check->parsed()) {
      const FixtureConfig config = load_config(o);
      const RequestFunction r = request_by_name(request, o.seed);
      if (max_s > config.guards.max_tree_bits) throw GuardError("max-s exceeds max_tree_bits");
      bool ok = true;
      for (int s = 1; s <= max_s; ++s) {
        const BlockTree t = tree_edges(s, r, config.guards);
        const std::vector<Integer> bfs = potentials_bfs(s, r, config.guards);
        TreeColoring dc(r);
        std::size_t mismatches = 0;
        for (std::size_t j = 0; j < bfs.size(); ++j) {
          if (dc.potential(Dyadic(pow2(s) + j)) != bfs[j]) ++mismatches;
        }
        const bool good = t.is_tree() && mismatches == 0;
        ok = ok && good;
        std::cout << "s=" << s << " edges=" << t.edges.size() << " tree=" << (t.is_tree() ? "yes" : "no")
                  << " evaluator_mismatches=" << mismatches << "\n";
      }
      return ok ? 0 : 1;
    }
    if (search->parsed()) {
      const FixtureConfig config = load_config(o);
      SearchQuery q;
      if (k > 0) q.max_terms = k;
      q.bound = bound;
      q.size = size;
      const json report = search_report(config, coloring, q, filter);
      emit(o, report);
      return self_check(report);
    }
    if (delta3_witness->parsed()) {
      const FixtureConfig config = load_config(o);
      validate(config, "delta3");
      Delta3Construction c(config.delta3_family(), config.guards);
      const Delta3Search found = blind ? find_witness_blind(c, index, blind_bits) : find_witness(c, index);
      if (!found.witness) {
        std::cerr << "no witness: " << found.reason << "\n";
        return 1;
      }
      const json report = delta3_report(config, *found.witness);
      emit(o, report);
      return self_check(report);
    }
    if (pi3_witness->parsed()) {
      const FixtureConfig config = load_config(o);
      validate(config, "pi3");
      Pi3Construction c(config.pi3_family(), config.guards);
      const Pi3Search found = find_witness(c, index);
      if (!found.witness) {
        std::cerr << "no witness: " << found.reason << "\n";
        return 1;
      }
      const json report = pi3_report(config, *found.witness);
      emit(o, report);
      return self_check(report);
    }
    if (extract->parsed()) {
      const FixtureConfig config = load_config(o);
      const ExtractionPolicy p = policy == "earliest-end"     ? ExtractionPolicy::earliest_end
                                 : policy == "leftmost-start" ? ExtractionPolicy::leftmost_start
                                                              : throw ConfigError("unknown policy " + policy);
      const json report = extraction_report(stream, p, count, fs_outputs, config.guards);
      emit(o, report);
      return self_check(report);
    }
    if (kill->parsed()) {
      const FixtureConfig config = load_config(o);
      validate(config, family);
      const json report = kill_report(config, family, index);
      emit(o, report);
      return self_check(report);
    }
    if (verify->parsed()) {
      std::ifstream in(report_path);
      if (!in) throw ConfigError("cannot open " + report_path);
      json report;
      try {
        in >> report;
      } catch (const json::exception& e) {
        throw ConfigError(report_path + ": " + e.what());
      }
      const CheckResult r = verify_report(report);
      for (const std::string& f : r.failures) std::cout << "FAIL " << f << "\n";
      std::cout << (r.ok() ? "verified" : "not verified") << " " << report.value("kind", "") << "\n";
      return r.ok() ? 0 : 1;
    }
    if (validate_cmd->parsed()) {
      const FixtureConfig config = load_config(o);
      int code = 0;
      for (const std::string f : {"delta3", "pi3"}) {
        const ValidationReport r =
            f == "delta3" ? validate_family(config.delta3_family()) : validate_family(config.pi3_family());
        std::cout << f << ": " << r.checks << " checks, " << r.violations.size() << " violations\n";
        for (const std::string& v : r.violations) std::cout << "  " << v << "\n";
        if (!r.ok()) code = 1;
      }
      return code;
    }
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
