#pragma once

#include <string>
#include <vector>

namespace hindman {

// Outcome of a recomputation: empty failures means everything held.
struct CheckResult {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  explicit operator bool() const { return ok(); }
};

}  // namespace hindman
