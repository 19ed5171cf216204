#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hindman/approx_families.hpp"
#include "hindman/errors.hpp"
#include "hindman/guards.hpp"

namespace hindman {

// Malformed configuration or report file.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct FamilySpec {
  std::string name;
  std::string kind;  // "instant", "delayed" or "monotone"
  SetDescriptor set = SetDescriptor::list({});
  DelaySchedule delay;
  MonotoneSchedule schedule;
};

// Fixture catalogs for both constructions plus guard overrides. Integers are
// written as decimal strings; plain JSON integers are accepted on input.
struct FixtureConfig {
  std::vector<FamilySpec> delta3;
  std::vector<FamilySpec> pi3;
  Guards guards;

  Delta3Family delta3_family() const;
  MonotoneFamily pi3_family() const;

  nlohmann::json to_json() const;
  static FixtureConfig from_json(const nlohmann::json& j);
  static FixtureConfig load(const std::string& path);
};

// Same fixtures as standard_delta3_catalog() / standard_pi3_catalog().
FixtureConfig standard_config();

nlohmann::json set_to_json(const SetDescriptor& set);
SetDescriptor set_from_json(const nlohmann::json& j);
nlohmann::json guards_to_json(const Guards& guards);
Guards guards_from_json(const nlohmann::json& j, Guards base = {});

// Decimal-string integers.
nlohmann::json encode(const Natural& x);
nlohmann::json encode(long long x);
Natural decode_natural(const nlohmann::json& j);
long long decode_int(const nlohmann::json& j);

}  // namespace hindman
