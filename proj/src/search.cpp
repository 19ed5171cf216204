#include "hindman/search.hpp"

#include <unordered_map>

#include "hindman/errors.hpp"

namespace hindman {

std::uint64_t binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  unsigned __int128 r = 1;
  for (std::uint64_t j = 1; j <= m; ++j) {
    r = r * (n - m + j) / j;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

class Searcher {
 public:
  Searcher(const Coloring& coloring, const SearchQuery& query, const std::function<bool(const NumberSet&)>& accept)
      : coloring_(coloring), query_(query), accept_(accept) {}

  bool run(SearchResult& result) {
    std::map<std::uint64_t, int> sums;  // sum -> fewest terms
    if (descend(1, sums)) {
      result.found = chosen_;
      for (const auto& [s, terms] : found_sums_) result.colors.emplace(s, color(s));
    }
    result.nodes = nodes_;
    return result.found.has_value();
  }

 private:
  const ProductColor& color(std::uint64_t x) {
    auto it = cache_.find(x);
    if (it == cache_.end()) it = cache_.emplace(x, coloring_(Natural(x))).first;
    return it->second;
  }

  bool descend(std::uint64_t from, const std::map<std::uint64_t, int>& sums) {
    if (static_cast<int>(chosen_.size()) == query_.size) {
      std::vector<Natural> h(chosen_.begin(), chosen_.end());
      if (accept_ && !accept_(NumberSet(h))) return false;
      found_sums_ = sums;
      return true;
    }
    const std::uint64_t remaining = static_cast<std::uint64_t>(query_.size) - chosen_.size();
    for (std::uint64_t e = from; e + remaining - 1 <= query_.bound; ++e) {
      ++nodes_;
      std::map<std::uint64_t, int> next = sums;
      const ProductColor& target = chosen_.empty() ? color(e) : color(chosen_.front());
      bool mono = color(e) == target;
      next[e] = 1;
      for (const auto& [s, terms] : sums) {
        if (!mono) break;
        if (query_.max_terms && terms >= *query_.max_terms) continue;
        const std::uint64_t t = s + e;
        auto [it, fresh] = next.emplace(t, terms + 1);
        if (!fresh) it->second = std::min(it->second, terms + 1);
        if (fresh) mono = color(t) == target;
      }
      if (!mono) continue;
      chosen_.push_back(e);
      if (descend(e + 1, next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const Coloring& coloring_;
  const SearchQuery& query_;
  const std::function<bool(const NumberSet&)>& accept_;
  std::vector<std::uint64_t> chosen_;
  std::map<std::uint64_t, int> found_sums_;
  std::unordered_map<std::uint64_t, ProductColor> cache_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult search_mono(const Coloring& coloring, const SearchQuery& query,
                         const std::function<bool(const NumberSet&)>& accept, const Guards& guards) {
  if (query.size < 2) throw DomainError("search_mono needs m >= 2");
  if (query.max_terms && *query.max_terms < 1) throw DomainError("sum-size cap k must be >= 1");
  if (query.bound < static_cast<std::uint64_t>(query.size)) throw DomainError("bound N must be at least m");
  if (query.size > guards.max_sum_terms) throw GuardError("m exceeds max_sum_terms");
  const std::uint64_t subsets = binomial(query.bound, static_cast<std::uint64_t>(query.size));
  if (subsets > guards.max_search_subsets) {
    throw GuardError("C(" + std::to_string(query.bound) + ", " + std::to_string(query.size) + ") = " +
                     (subsets == UINT64_MAX ? std::string("overflow") : std::to_string(subsets)) +
                     " exceeds max_search_subsets=" + std::to_string(guards.max_search_subsets));
  }
  SearchResult result;
  result.query = query;
  result.coloring = coloring.name();
  Searcher(coloring, query, accept).run(result);
  return result;
}

}  // namespace hindman
