#include "hindman/tree_coloring.hpp"

#include <numeric>
#include <queue>
#include <stdexcept>

#include "hash.hpp"
#include "hindman/errors.hpp"

namespace hindman {

namespace {

Natural top_of_block(int n) { return pow2(n + 1) - 1; }

bool in_block(const Natural& x, int n) { return x >= pow2(n) && x < pow2(n + 1); }

void check_legal(int n, const Natural& w) {
  if (w < 1) throw DomainError("request argument w must be positive");
  if (n < 0 || n >= low_bit(w)) {
    throw DomainError("request R(" + std::to_string(n) + ", " + w.str() + ") needs 0 <= n < lambda(w)");
  }
}

}  // namespace

RequestFunction::RequestFunction(Evaluator eval, std::string description)
    : eval_(std::move(eval)), description_(std::move(description)) {}

RequestFunction RequestFunction::from_profile(ProfileEvaluator eval, std::string description) {
  RequestFunction r;
  r.profile_ = std::move(eval);
  r.eval_ = [p = r.profile_](int n, const Natural& w) { return p(n, low_bit(w), high_bit(w)); };
  r.description_ = std::move(description);
  return r;
}

Natural RequestFunction::operator()(int n, const Dyadic& w) const { return evaluate(n, w.value()); }

Natural RequestFunction::evaluate(int n, const Natural& w) const {
  check_legal(n, w);
  Natural r = eval_(n, w);
  if (!in_block(r, n)) {
    throw std::logic_error(description_ + ": R(" + std::to_string(n) + ", " + w.str() + ") = " + r.str() +
                           " is outside B^" + std::to_string(n));
  }
  return r;
}

Natural RequestFunction::profile(int n, int k, int s) const {
  if (!profile_) throw std::logic_error(description_ + " is not a profile request");
  Natural r = profile_(n, k, s);
  if (!in_block(r, n)) {
    throw std::logic_error(description_ + ": Q(" + std::to_string(n) + ", " + std::to_string(k) + ", " +
                           std::to_string(s) + ") = " + r.str() + " is outside B^" + std::to_string(n));
  }
  return r;
}

RequestFunction default_request() {
  return RequestFunction::from_profile([](int n, int, int) { return top_of_block(n); }, "default 2^(n+1)-1");
}

RequestFunction minimal_request() {
  return RequestFunction::from_profile([](int n, int, int) { return pow2(n); }, "minimal 2^n");
}

RequestFunction random_request(std::uint64_t seed) {
  return RequestFunction(
      [seed](int n, const Natural& w) {
        std::uint64_t h = detail::hash_combine(detail::splitmix64(seed), static_cast<std::uint64_t>(n));
        return pow2(n) + detail::random_bits(detail::hash_natural(h, w), n);
      },
      "random(seed=" + std::to_string(seed) + ")");
}

RequestFunction random_profile_request(std::uint64_t seed) {
  return RequestFunction::from_profile(
      [seed](int n, int k, int s) {
        std::uint64_t h = detail::splitmix64(seed ^ 0x5bd1e995ULL);
        h = detail::hash_combine(h, static_cast<std::uint64_t>(n));
        h = detail::hash_combine(h, static_cast<std::uint64_t>(k));
        h = detail::hash_combine(h, static_cast<std::uint64_t>(s));
        return pow2(n) + detail::random_bits(h, n);
      },
      "random profile(seed=" + std::to_string(seed) + ")");
}

RequestFunction extend_request(PartialRequest partial, std::string description) {
  for (const auto& [key, value] : partial) {
    const auto& [n, w] = key;
    check_legal(n, w);
    if (!in_block(value, n)) {
      throw DomainError("partial request value " + value.str() + " for n=" + std::to_string(n) + " is not in B^" +
                        std::to_string(n));
    }
  }
  auto table = std::make_shared<const PartialRequest>(std::move(partial));
  return RequestFunction(
      [table](int n, const Natural& w) {
        auto it = table->find({n, w});
        return it != table->end() ? it->second : top_of_block(n);
      },
      std::move(description));
}

Natural TriRequestFunction::operator()(int n, int k, int s) const {
  if (in_domain && !in_domain(n, k, s)) return top_of_block(n);
  return eval(n, k, s);
}

RequestFunction lift_tri(TriRequestFunction q) {
  std::string description = "lifted " + q.description;
  return RequestFunction::from_profile([q = std::move(q)](int n, int k, int s) { return q(n, k, s); },
                                       std::move(description));
}

bool BlockTree::is_tree() const {
  const std::size_t vertices = std::size_t{1} << s;
  if (edges.size() != vertices - 1) return false;
  const Natural base = pow2(s);
  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const TreeEdge& e : edges) {
    if (!in_block(e.from, s) || !in_block(e.to, s)) return false;
    auto a = find(static_cast<std::size_t>(e.from - base));
    auto b = find(static_cast<std::size_t>(e.to - base));
    if (a == b) return false;  // cycle or repeated edge
    parent[a] = b;
  }
  return true;  // V - 1 edges without a cycle: connected
}

BlockTree tree_edges(int s, const RequestFunction& request, const Guards& guards) {
  if (s < 0) throw DomainError("tree level must be >= 0");
  if (s > guards.max_tree_bits) {
    throw GuardError("tree_edges(" + std::to_string(s) + ") exceeds max_tree_bits=" +
                     std::to_string(guards.max_tree_bits));
  }
  BlockTree tree{s, {}};
  tree.edges.reserve((std::size_t{1} << s) - 1);
  for (const Natural& w : BlockRange(s)) {
    const int lambda = low_bit(w);
    for (int n = 0; n < lambda; ++n) tree.edges.push_back({w, w + request.evaluate(n, w), n});
  }
  return tree;
}

TreeEdge bridge(const Dyadic& w, int n, const RequestFunction& request) {
  if (n < 0 || n >= w.lambda()) {
    throw DomainError("bridge needs 0 <= n < lambda(w); got n=" + std::to_string(n) + ", w=" + w.value().str());
  }
  return {w.value(), w.value() + request(n, w), n};
}

TreeColoring::TreeColoring(RequestFunction request) : request_(std::move(request)) {}

Natural TreeColoring::request(int n, const Natural& w) const {
  RequestKey key = request_.is_profile() ? RequestKey{n, low_bit(w), high_bit(w), 0} : RequestKey{n, -1, -1, w};
  {
    std::lock_guard lock(mutex_);
    if (auto it = request_cache_.find(key); it != request_cache_.end()) return it->second;
  }
  Natural value = request_.evaluate(n, w);
  std::lock_guard lock(mutex_);
  if (request_cache_.emplace(std::move(key), value).second) ++evaluations_;
  return value;
}

std::size_t TreeColoring::request_evaluations() const {
  std::lock_guard lock(mutex_);
  return evaluations_;
}

Integer TreeColoring::subtree_potential(const Natural& base, int level, const Natural& point) const {
  if (level < 0) return 0;
  Natural offset = point - base;
  NodeKey key = request_.is_profile() ? NodeKey{high_bit(base), low_bit(base), level, 0, offset}
                                      : NodeKey{-1, -1, level, base, offset};
  {
    std::lock_guard lock(mutex_);
    if (auto it = node_cache_.find(key); it != node_cache_.end()) return it->second;
  }
  // Walk the digits of the offset from the top. Each set digit j crosses the
  // bridge of T_{p,j} from the low half to the high half T_{p+2^j,j-1}.
  Integer total = 0;
  Natural p = base;
  for (int j = level; j >= 0; --j) {
    if (!test_bit(offset, j)) continue;
    Natural landing = p + request(j, p);
    Natural high_base = p + pow2(j);
    total += 1 - subtree_potential(high_base, j - 1, landing);
    p = std::move(high_base);
  }
  std::lock_guard lock(mutex_);
  node_cache_.emplace(std::move(key), total);
  return total;
}

Integer TreeColoring::potential(const Dyadic& w) const {
  const int s = w.mu();
  if (s < 1) throw DomainError("tree coloring is defined for w >= 2");
  return subtree_potential(pow2(s), s - 1, w.value());
}

Natural TreeColoring::residue(const Dyadic& w, const Natural& modulus) const {
  if (modulus < 2) throw DomainError("color modulus must be >= 2");
  Integer r = potential(w) % modulus;
  if (r < 0) r += modulus;
  return r;
}

int TreeColoring::parity(const Dyadic& w) const { return static_cast<int>(residue(w, 2)); }

Natural color_mod(const RequestFunction& request, const Dyadic& w, const Natural& modulus) {
  return TreeColoring(request).residue(w, modulus);
}

int color_parity(const RequestFunction& request, const Dyadic& w) { return TreeColoring(request).parity(w); }

std::vector<Integer> potentials_bfs(int s, const RequestFunction& request, const Guards& guards) {
  BlockTree tree = tree_edges(s, request, guards);
  if (!tree.is_tree()) throw std::logic_error("request graph on B^" + std::to_string(s) + " is not a tree");
  const std::size_t vertices = std::size_t{1} << s;
  const Natural base = pow2(s);
  std::vector<std::vector<std::pair<std::size_t, int>>> adjacent(vertices);
  for (const TreeEdge& e : tree.edges) {
    auto a = static_cast<std::size_t>(e.from - base);
    auto b = static_cast<std::size_t>(e.to - base);
    adjacent[a].push_back({b, +1});
    adjacent[b].push_back({a, -1});
  }
  std::vector<Integer> potential(vertices);
  std::vector<bool> seen(vertices, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    std::size_t v = frontier.front();
    frontier.pop();
    for (auto [u, sign] : adjacent[v]) {
      if (seen[u]) continue;
      seen[u] = true;
      potential[u] = potential[v] + sign;
      frontier.push(u);
    }
  }
  return potential;
}

Natural color_mod_bfs(const RequestFunction& request, const Dyadic& w, const Natural& modulus, const Guards& guards) {
  if (w.mu() < 1) throw DomainError("tree coloring is defined for w >= 2");
  if (modulus < 2) throw DomainError("color modulus must be >= 2");
  auto table = potentials_bfs(w.mu(), request, guards);
  Integer r = table[static_cast<std::size_t>(w.value() - pow2(w.mu()))] % modulus;
  if (r < 0) r += modulus;
  return r;
}

int popcount_coloring(const Dyadic& w) { return w.popcount() % 2; }

}  // namespace hindman
