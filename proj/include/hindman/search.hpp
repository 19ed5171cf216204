#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hindman/apartness.hpp"

namespace hindman {

struct SearchQuery {
  std::optional<int> max_terms;  // k; empty means all finite sums
  std::uint64_t bound = 0;       // N: elements drawn from [1, N]
  int size = 0;                  // m
};

struct SearchResult {
  SearchQuery query;
  std::string coloring;
  std::optional<std::vector<std::uint64_t>> found;
  std::map<std::uint64_t, ProductColor> colors;  // FS^{<=k}(found) -> color
  std::uint64_t nodes = 0;                       // partial sets visited
};

// C(n, m), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t m);

// First m-subset of [1, N] in lexicographic order whose FS^{<=k} is
// monochromatic and which passes `accept`. Partial sets are pruned as soon as
// two of their sums get different colors. GuardError if C(N, m) exceeds
// guards.max_search_subsets.
SearchResult search_mono(const Coloring& coloring, const SearchQuery& query,
                         const std::function<bool(const NumberSet&)>& accept = {}, const Guards& guards = {});

}  // namespace hindman
