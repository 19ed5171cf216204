#include "hindman/delta3.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "hindman/errors.hpp"

namespace hindman {

struct Delta3Construction::Impl {
  Delta3Family family;
  Guards guards;
  mutable std::mutex mutex;
  mutable std::map<std::tuple<int, int, int>, std::vector<int>> candidates;
  std::unique_ptr<TreeColoring> tree;
};

Delta3Construction::Delta3Construction(Delta3Family family, Guards guards) : impl_(std::make_shared<Impl>()) {
  impl_->family = std::move(family);
  impl_->guards = guards;
  // The tree's request holds impl weakly so the two do not keep each other alive.
  std::weak_ptr<Impl> weak = impl_;
  impl_->tree = std::make_unique<TreeColoring>(RequestFunction::from_profile(
      [weak](int n, int k, int s) { return Delta3Construction(weak.lock()).request_profile(n, k, s); },
      "delta3 priority request"));
}

const Delta3Family& Delta3Construction::family() const { return impl_->family; }
const Guards& Delta3Construction::guards() const { return impl_->guards; }
const TreeColoring& Delta3Construction::tree() const { return *impl_->tree; }

bool Delta3Construction::block_indicator(int i, int n, int k, int s) const {
  return impl_->family.first_in_block(i, n, k, s, impl_->guards).has_value();
}

CandidateSet Delta3Construction::candidate_set(int i, int k, int s) const {
  CandidateSet out{i, k, s, {}};
  if (i < 0 || static_cast<std::size_t>(i) >= impl_->family.size()) return out;
  const auto key = std::make_tuple(i, k, s);
  {
    std::lock_guard lock(impl_->mutex);
    auto it = impl_->candidates.find(key);
    if (it != impl_->candidates.end()) {
      out.members = it->second;
      return out;
    }
  }
  // 2^i is only a cap; stop early once it cannot be reached inside (i, s).
  const std::size_t cap = i >= 62 ? SIZE_MAX : std::size_t{1} << i;
  for (int n = i + 1; n < s && out.members.size() < cap; ++n) {
    if (block_indicator(i, n, k, s)) out.members.push_back(n);
  }
  std::lock_guard lock(impl_->mutex);
  impl_->candidates.emplace(key, out.members);
  return out;
}

int Delta3Construction::chooser_profile(int n, int k, int s) const {
  const int limit = std::min<int>(n, static_cast<int>(impl_->family.size()));
  for (int i = 0; i < limit; ++i) {
    const auto c = candidate_set(i, k, s).members;
    if (std::binary_search(c.begin(), c.end(), n)) return i;
  }
  return n;
}

int Delta3Construction::chooser(int n, const Natural& w) const {
  if (w < 1 || n < 0 || n >= low_bit(w)) throw DomainError("chooser needs 0 <= n < lambda(w)");
  return chooser_profile(n, low_bit(w), high_bit(w));
}

Natural Delta3Construction::request_profile(int n, int k, int s) const {
  const int j = chooser_profile(n, k, s);
  auto x = impl_->family.first_in_block(j, n, k, s, impl_->guards);
  return x ? *x : pow2(n + 1) - 1;
}

Natural Delta3Construction::request(int n, const Natural& w) const {
  if (w < 1 || n < 0 || n >= low_bit(w)) throw DomainError("request needs 0 <= n < lambda(w)");
  return request_profile(n, low_bit(w), high_bit(w));
}

Delta3Construction::Delta3Construction(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

RequestFunction Delta3Construction::request_function() const {
  return RequestFunction::from_profile(
      [self = *this](int n, int k, int s) { return self.request_profile(n, k, s); }, "delta3 priority request");
}

int Delta3Construction::color(const Natural& w) const { return impl_->tree->parity(Dyadic(w)); }

CandidateSet Delta3Construction::candidate_limit(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= impl_->family.size()) throw DomainError("family index out of range");
  const Delta3Entry& e = impl_->family.entry(static_cast<std::size_t>(i));
  if (!e.truth) throw DomainError("entry " + e.name + " has no truth oracle");
  CandidateSet out{i, -1, -1, {}};
  const std::size_t cap = std::size_t{1} << std::min(i, 62);
  for (int n = i + 1; n <= impl_->guards.max_position && out.members.size() < cap; ++n) {
    if (e.truth->first_member_in_block(n, impl_->guards)) out.members.push_back(n);
  }
  if (out.members.size() < cap) {
    throw DomainError("candidate limit of index " + std::to_string(i) + " has fewer than 2^i positions up to " +
                      std::to_string(impl_->guards.max_position));
  }
  return out;
}

CheckResult Delta3Construction::check_candidate_limit(int i, int samples) const {
  CheckResult result;
  const CandidateSet limit = candidate_limit(i);
  const Delta3Entry& e = impl_->family.entry(static_cast<std::size_t>(i));
  if (!e.settling) {
    result.failures.push_back("entry " + e.name + " has no settling oracle");
    return result;
  }
  const int N = limit.members.back();
  const int K = e.settling->k_bound(N);
  for (int a = 0; a < samples; ++a) {
    const int k = K + 1 + 3 * a;
    const int s_floor = std::max(e.settling->s_bound(k, N), N);
    for (int b = 0; b < samples; ++b) {
      const int s = s_floor + 1 + 7 * b;
      if (candidate_set(i, k, s).members != limit.members) {
        result.failures.push_back("C_" + std::to_string(i) + "(" + std::to_string(k) + ", " + std::to_string(s) +
                                  ") differs from the limit");
      }
    }
  }
  return result;
}

namespace {

// Least member y of the truth with lambda(y) > low and mu(y) > high_floor.
std::optional<Natural> least_member(const SetDescriptor& truth, int low, int high_floor, const Guards& guards) {
  for (int n = std::max(low + 1, high_floor + 1); n <= guards.max_position; ++n) {
    for (const Natural& y : truth.members_in_block(n, guards)) {
      if (low_bit(y) > low) return y;
    }
  }
  return std::nullopt;
}

int weak_apartness_horizon(const SetDescriptor& truth, const Guards& guards) {
  return truth.kind() == SetDescriptor::Kind::predicate ? std::min(guards.max_position, guards.max_block_bits)
                                                        : guards.max_position;
}

}  // namespace

Delta3Search find_witness(const Delta3Construction& construction, int i) {
  Delta3Search out;
  const Delta3Family& family = construction.family();
  const Guards& guards = construction.guards();
  if (i < 0 || static_cast<std::size_t>(i) >= family.size()) {
    out.reason = "family index out of range";
    return out;
  }
  const Delta3Entry& e = family.entry(static_cast<std::size_t>(i));
  if (!e.truth || !e.settling) {
    out.reason = "entry " + e.name + " has no truth/settling oracle; use blind mode with a bound";
    return out;
  }
  if (e.truth->is_finite()) {
    out.reason = "truth(" + std::to_string(i) + ") is finite";
    return out;
  }
  const int horizon = weak_apartness_horizon(*e.truth, guards);
  auto weak = has_weak_apartness(NumberSet(e.truth->members_up_to(horizon, guards)));
  if (!weak) {
    out.reason = "truth(" + std::to_string(i) + ") fails weak apartness below 2^" + std::to_string(horizon + 1);
    return out;
  }

  CandidateSet limit;
  try {
    limit = construction.candidate_limit(i);
  } catch (const DomainError& ex) {
    out.reason = ex.what();
    return out;
  }
  Delta3Witness w;
  w.i = i;
  w.mode = "oracle";
  w.limit = limit.members;
  const int N = limit.members.back();
  w.K = e.settling->k_bound(N);
  auto w1 = least_member(*e.truth, std::max(N, w.K), -1, guards);
  if (!w1) {
    out.reason = "no member with lambda > " + std::to_string(std::max(N, w.K)) + " below the position guard";
    return out;
  }
  w.w1 = *w1;
  w.k = low_bit(w.w1);
  w.s_k = e.settling->s_bound(w.k, N);
  auto w2 = least_member(*e.truth, high_bit(w.w1), w.s_k, guards);
  if (!w2) {
    out.reason = "no member w2 >> w1 with mu > " + std::to_string(w.s_k) + " below the position guard";
    return out;
  }
  w.w2 = *w2;
  w.s = high_bit(w.w2);
  const Natural sum = w.w1 + w.w2;
  for (int n : limit.members) {
    for (const Natural& x : e.truth->members_in_block(n, guards)) {
      if (construction.request(n, sum) == x) {
        w.x = x;
        w.color_sum = construction.color(sum);
        w.color_with_x = construction.color(x + sum);
        out.witness = w;
        return out;
      }
    }
  }
  out.reason = "no x in X_" + std::to_string(i) + " is requested by w1 + w2 = " + sum.str();
  return out;
}

Delta3Search find_witness_blind(const Delta3Construction& construction, int i, int bound_bits) {
  Delta3Search out;
  const Delta3Family& family = construction.family();
  if (i < 0 || static_cast<std::size_t>(i) >= family.size()) {
    out.reason = "family index out of range";
    return out;
  }
  const Delta3Entry& e = family.entry(static_cast<std::size_t>(i));
  if (!e.truth) {
    out.reason = "entry " + e.name + " has no truth oracle";
    return out;
  }
  if (bound_bits > construction.guards().blind_bound_bits) {
    throw GuardError("blind bound 2^" + std::to_string(bound_bits) + " exceeds blind_bound_bits=" +
                     std::to_string(construction.guards().blind_bound_bits));
  }
  const std::vector<Natural> members = e.truth->members_up_to(bound_bits - 1, construction.guards());
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (std::size_t b = 0; b < c; ++b) {
      if (!(high_bit(members[b]) < low_bit(members[c]))) continue;
      const Natural sum = members[b] + members[c];
      const int color_sum = construction.color(sum);
      for (std::size_t a = 0; a < b; ++a) {
        if (!(high_bit(members[a]) < low_bit(members[b]))) continue;
        const int color_with_x = construction.color(members[a] + sum);
        if (color_with_x != color_sum) {
          Delta3Witness w;
          w.i = i;
          w.mode = "blind";
          w.x = members[a];
          w.w1 = members[b];
          w.w2 = members[c];
          w.color_sum = color_sum;
          w.color_with_x = color_with_x;
          w.k = low_bit(w.w1);
          w.s = high_bit(w.w2);
          out.witness = w;
          return out;
        }
      }
    }
  }
  out.reason = "not found within bound 2^" + std::to_string(bound_bits);
  return out;
}

CheckResult verify_witness(const Delta3Family& family, const Delta3Witness& w, const Guards& guards) {
  CheckResult result;
  auto fail = [&](std::string m) { result.failures.push_back(std::move(m)); };
  if (w.i < 0 || static_cast<std::size_t>(w.i) >= family.size()) {
    fail("family index out of range");
    return result;
  }
  const Delta3Entry& e = family.entry(static_cast<std::size_t>(w.i));
  if (w.x < 1 || w.w1 < 1 || w.w2 < 1) {
    fail("witness values must be positive");
    return result;
  }
  if (!apart(Dyadic(w.x), Dyadic(w.w1))) fail("x << w1 fails");
  if (!apart(Dyadic(w.w1), Dyadic(w.w2))) fail("w1 << w2 fails");
  if (e.truth) {
    for (const Natural* v : {&w.x, &w.w1, &w.w2}) {
      if (!e.truth->contains(*v)) fail(v->str() + " is not in truth(" + std::to_string(w.i) + ")");
    }
  }
  const Natural sum = w.w1 + w.w2;
  NumberSet fs = finite_sums(NumberSet({w.x, w.w1, w.w2}), 3, guards);
  if (!fs.contains(sum) || !fs.contains(w.x + sum)) fail("w1 + w2 or x + w1 + w2 is not in FS^{<=3}");

  // Fresh construction: nothing is shared with the finder.
  Delta3Construction fresh(family, guards);
  if (w.mode == "oracle" && fresh.request(high_bit(w.x), sum) != w.x) fail("R(mu(x), w1 + w2) != x");
  const int c_sum = color_parity(fresh.request_function(), Dyadic(sum));
  const int c_x = color_parity(fresh.request_function(), Dyadic(w.x + sum));
  if (c_sum != w.color_sum || c_x != w.color_with_x) fail("recorded colors do not match a recomputation");
  if (c_sum == c_x) fail("c(w1 + w2) == c(x + w1 + w2)");
  return result;
}

}  // namespace hindman
