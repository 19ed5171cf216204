#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hindman/dyadic.hpp"
#include "hindman/guards.hpp"

namespace hindman {

// Total map (n, w) -> R(n, w) in B^n for n < lambda(w).
//
// A request may declare that it only depends on (n, lambda(w), mu(w)); the
// evaluator then shares work between all vertices with the same profile.
class RequestFunction {
 public:
  using Evaluator = std::function<Natural(int n, const Natural& w)>;
  using ProfileEvaluator = std::function<Natural(int n, int k, int s)>;

  RequestFunction(Evaluator eval, std::string description);
  static RequestFunction from_profile(ProfileEvaluator eval, std::string description);

  // R(n, w); throws DomainError if n >= lambda(w) and std::logic_error if the
  // underlying evaluator leaves B^n.
  Natural operator()(int n, const Dyadic& w) const;
  Natural evaluate(int n, const Natural& w) const;
  // Only for profile requests.
  Natural profile(int n, int k, int s) const;

  bool is_profile() const { return static_cast<bool>(profile_); }
  const std::string& description() const { return description_; }

 private:
  RequestFunction() = default;
  Evaluator eval_;
  ProfileEvaluator profile_;
  std::string description_;
};

// R(n, w) = 2^(n+1) - 1 everywhere.
RequestFunction default_request();
// R(n, w) = 2^n; its tree coloring is the popcount parity.
RequestFunction minimal_request();
// Seeded pseudo-random requests, fully w-dependent or profile-only.
RequestFunction random_request(std::uint64_t seed);
RequestFunction random_profile_request(std::uint64_t seed);

// Partial request map keyed by (n, w).
using PartialRequest = std::map<std::pair<int, Natural>, Natural>;

// Total extension: agrees with `partial` where defined, 2^(n+1) - 1 elsewhere.
// Throws DomainError if a partial value is outside B^n or a key has n >= lambda(w).
RequestFunction extend_request(PartialRequest partial, std::string description = "extended partial request");

// Q(n, k, s) in B^n on a stated domain.
struct TriRequestFunction {
  std::function<Natural(int n, int k, int s)> eval;
  std::function<bool(int n, int k, int s)> in_domain;  // empty: total
  std::string description;

  // Q(n, k, s), or 2^(n+1) - 1 off the domain.
  Natural operator()(int n, int k, int s) const;
};

// (n, w) -> Q(n, lambda(w), mu(w)).
RequestFunction lift_tri(TriRequestFunction q);

struct TreeEdge {
  Natural from;  // w
  Natural to;    // w + R(n, w)
  int n;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

// Explicit graph on B^s.
struct BlockTree {
  int s = 0;
  std::vector<TreeEdge> edges;

  // 2^s - 1 edges, every endpoint in B^s, connected and acyclic.
  bool is_tree() const;
};

// All edges (w, w + R(n, w), n) for w in B^s, n < lambda(w). GuardError above
// guards.max_tree_bits.
BlockTree tree_edges(int s, const RequestFunction& request, const Guards& guards = {});

// The unique edge joining T_{w,n-1} and T_{w+2^n,n-1}: (w, w + R(n, w)).
TreeEdge bridge(const Dyadic& w, int n, const RequestFunction& request);

// Signed path coloring of the request trees, evaluated by divide and conquer
// over the subtrees T_{b,m} = {b + x : 0 <= x < 2^(m+1)}.
//
// potential(w) is (#forward - #backward) edges on the tree path from 2^mu(w)
// to w, so potential(w + R(n, w)) = potential(w) + 1 for every n < lambda(w).
// Request values and subtree potentials are memoized for the lifetime of the
// object; the caches are guarded by a mutex, so one instance may be shared.
class TreeColoring {
 public:
  explicit TreeColoring(RequestFunction request);

  Integer potential(const Dyadic& w) const;
  // color_mod: potential(w) mod r, in [0, r).
  Natural residue(const Dyadic& w, const Natural& modulus) const;
  int parity(const Dyadic& w) const;

  // Memoized R(n, w); counted in request_evaluations() on a cache miss.
  Natural request(int n, const Natural& w) const;
  std::size_t request_evaluations() const;

  const RequestFunction& request_function() const { return request_; }

 private:
  // potential(point) - potential(base) inside T_{base, level}.
  Integer subtree_potential(const Natural& base, int level, const Natural& point) const;

  using RequestKey = std::tuple<int, int, int, Natural>;                  // (n, lambda, mu, w or 0)
  using NodeKey = std::tuple<int, int, int, Natural, Natural>;            // (mu, lambda, level, base or 0, offset)

  RequestFunction request_;
  mutable std::mutex mutex_;
  mutable std::map<RequestKey, Natural> request_cache_;
  mutable std::map<NodeKey, Integer> node_cache_;
  mutable std::size_t evaluations_ = 0;
};

// One-shot wrappers (fresh memo each call).
Natural color_mod(const RequestFunction& request, const Dyadic& w, const Natural& modulus);
int color_parity(const RequestFunction& request, const Dyadic& w);

// Reference oracle: BFS on the materialized tree of B^mu(w).
Natural color_mod_bfs(const RequestFunction& request, const Dyadic& w, const Natural& modulus,
                      const Guards& guards = {});
// Signed potentials of every vertex of B^s, indexed by w - 2^s.
std::vector<Integer> potentials_bfs(int s, const RequestFunction& request, const Guards& guards = {});

// Parity of the number of 1-digits of w.
int popcount_coloring(const Dyadic& w);

}  // namespace hindman
