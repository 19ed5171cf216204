#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "hindman/apartness.hpp"
#include "hindman/check.hpp"
#include "hindman/config.hpp"
#include "hindman/delta3.hpp"
#include "hindman/pi3.hpp"
#include "hindman/search.hpp"

namespace hindman {

// Colorings by id: "popcount", "c0", "tree-default", "tree-minimal",
// "tree-random-<seed>", "delta3", "pi3", and products joined by '*'
// (e.g. "delta3*c0"). Construction colorings use the config's families.
Coloring make_coloring(const std::string& id, const FixtureConfig& config);

// Streams by id: "naturals" (1, 2, 3, ...), "progression-<a>-<d>"
// (a, a + d, ...), "squares".
ApartExtractor::Stream make_stream(const std::string& id);

// Every report is a JSON object with sorted keys, decimal-string integers, a
// "kind", a one-line "claim" and the config it was computed from.
nlohmann::json delta3_report(const FixtureConfig& config, const Delta3Witness& witness);
nlohmann::json pi3_report(const FixtureConfig& config, const Pi3Witness& witness);
nlohmann::json search_report(const FixtureConfig& config, const std::string& coloring, const SearchQuery& query,
                             const std::string& filter);
nlohmann::json extraction_report(const std::string& stream, ExtractionPolicy policy, std::size_t count,
                                 std::size_t fs_outputs, const Guards& guards);

// Two sums of one finite H inside fixture `index` of `family` ("delta3" or
// "pi3") with different colors under the product "<family>*c0". Non weakly
// apart fixtures are killed through c0, infinite ones through the
// construction witness, finite weakly apart ones by exhaustive search of
// FS(H). Throws VerificationError if nothing is found.
nlohmann::json kill_report(const FixtureConfig& config, const std::string& family, int index);

// Search filters: "none" or "not-weak-apart".
std::function<bool(const NumberSet&)> make_filter(const std::string& id);

// Recomputes every number, color and relation a report states.
CheckResult verify_report(const nlohmann::json& report);

}  // namespace hindman
