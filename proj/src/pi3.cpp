#include "hindman/pi3.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "hindman/errors.hpp"

namespace hindman {

struct Pi3Construction::Impl {
  MonotoneFamily family;
  Guards guards;
  mutable std::mutex mutex;
  // (y, k, s) -> I(1..m, y, k, s), filled in increasing n.
  mutable std::map<std::tuple<int, int, int>, std::vector<std::optional<int>>> stages;
  mutable std::map<int, std::shared_ptr<TreeColoring>> q_trees;
  std::unique_ptr<TreeColoring> tree;
};

Pi3Construction::Pi3Construction(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

Pi3Construction::Pi3Construction(MonotoneFamily family, Guards guards) : impl_(std::make_shared<Impl>()) {
  impl_->family = std::move(family);
  impl_->guards = guards;
  std::weak_ptr<Impl> weak = impl_;
  impl_->tree = std::make_unique<TreeColoring>(RequestFunction(
      [weak](int n, const Natural& w) { return Pi3Construction(weak.lock()).request(n, w); }, "pi3 request"));
}

const MonotoneFamily& Pi3Construction::family() const { return impl_->family; }
const Guards& Pi3Construction::guards() const { return impl_->guards; }
const TreeColoring& Pi3Construction::tree() const { return *impl_->tree; }

Natural Pi3Construction::guess_element(int i, int n, int y, int s) const {
  return impl_->family.block_minimum(i, n, y, s, impl_->guards).argmin;
}

Value Pi3Construction::guess_bound(int i, int n, int y, int s) const {
  return impl_->family.block_minimum(i, n, y, s, impl_->guards).value;
}

std::optional<int> Pi3Construction::stage_index(int n, int y, int k, int s) const {
  if (!in_domain(n, y, k, s)) {
    throw DomainError("I(" + std::to_string(n) + ", " + std::to_string(y) + ", " + std::to_string(k) + ", " +
                      std::to_string(s) + ") needs 0 < n < y <= k <= s");
  }
  const auto key = std::make_tuple(y, k, s);
  std::vector<std::optional<int>> column;
  {
    std::lock_guard lock(impl_->mutex);
    auto it = impl_->stages.find(key);
    if (it != impl_->stages.end()) column = it->second;
  }
  if (column.size() >= static_cast<std::size_t>(n)) return column[static_cast<std::size_t>(n - 1)];
  const int size = static_cast<int>(impl_->family.size());
  for (int m = static_cast<int>(column.size()) + 1; m <= n; ++m) {
    std::optional<int> chosen;
    for (int i = 0; i < std::min(m, size) && !chosen; ++i) {
      if (guess_bound(i, m, y, s) >= static_cast<Value>(k)) continue;
      if (std::find(column.begin(), column.end(), std::optional<int>(i)) != column.end()) continue;
      chosen = i;
    }
    column.push_back(chosen);
  }
  std::lock_guard lock(impl_->mutex);
  auto& stored = impl_->stages[key];
  if (stored.size() < column.size()) stored = column;
  return column[static_cast<std::size_t>(n - 1)];
}

Natural Pi3Construction::q(int n, int y, int k, int s) const {
  if (in_domain(n, y, k, s)) {
    if (auto j = stage_index(n, y, k, s)) return guess_element(*j, y, k, s);
  }
  return pow2(y);
}

TriRequestFunction Pi3Construction::q_function(int n) const {
  return TriRequestFunction{[self = *this, n](int y, int k, int s) { return self.q(n, y, k, s); }, {},
                            "Q_" + std::to_string(n)};
}

Natural Pi3Construction::residue(int n, const Natural& w) const {
  if (n < 1) throw DomainError("residues need n >= 1");
  if (n > impl_->guards.max_request_bits) {
    throw GuardError("request position " + std::to_string(n) + " exceeds max_request_bits=" +
                     std::to_string(impl_->guards.max_request_bits));
  }
  std::shared_ptr<TreeColoring> tree;
  {
    std::lock_guard lock(impl_->mutex);
    auto& slot = impl_->q_trees[n];
    if (!slot) slot = std::make_shared<TreeColoring>(lift_tri(q_function(n)));
    tree = slot;
  }
  return tree->residue(Dyadic(w), pow2(n));
}

Natural Pi3Construction::request(int n, const Natural& w) const {
  if (w < 1 || n < 0 || n >= low_bit(w)) throw DomainError("request needs 0 <= n < lambda(w)");
  if (n == 0) return 1;
  return pow2(n) + residue(n, w);
}

RequestFunction Pi3Construction::request_function() const {
  return RequestFunction([self = *this](int n, const Natural& w) { return self.request(n, w); }, "pi3 request");
}

int Pi3Construction::color(const Natural& w) const { return impl_->tree->parity(Dyadic(w)); }

namespace {

const MonotoneEntry& entry_with_truth(const MonotoneFamily& family, int i) {
  const MonotoneEntry& e = family.entry(static_cast<std::size_t>(i));
  if (!e.truth) throw DomainError("entry " + e.name + " has no truth oracle");
  return e;
}

}  // namespace

std::vector<std::optional<int>> Pi3Construction::stable_indices(int n_max) const {
  std::vector<std::optional<int>> out(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
  std::set<int> used;
  const int size = static_cast<int>(impl_->family.size());
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 0; i < std::min(n, size); ++i) {
      if (used.count(i)) continue;
      if (!entry_with_truth(impl_->family, i).truth->members_in_block(n, impl_->guards).empty()) {
        out[static_cast<std::size_t>(n)] = i;
        used.insert(i);
        break;
      }
    }
  }
  return out;
}

std::optional<int> Pi3Construction::stable_index(int n) const {
  if (n < 1) throw DomainError("stable indices start at n = 1");
  return stable_indices(n)[static_cast<std::size_t>(n)];
}

int Pi3Construction::stage_k_floor(int n, int y) const {
  int k = y;
  const int size = static_cast<int>(impl_->family.size());
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i < std::min(m, size); ++i) {
      const MonotoneEntry& e = entry_with_truth(impl_->family, i);
      if (!e.settling) throw DomainError("entry " + e.name + " has no settling oracle");
      auto members = e.truth->members_in_block(m, impl_->guards);
      if (members.empty()) continue;
      Value least = e.settling->member_limit(members.front(), y);
      for (const Natural& x : members) least = std::min(least, e.settling->member_limit(x, y));
      k = std::max<int>(k, static_cast<int>(least) + 1);
    }
  }
  return k;
}

int Pi3Construction::stage_s_floor(int n, int y, int k) const {
  int s = k;
  const int size = static_cast<int>(impl_->family.size());
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i < std::min(m, size); ++i) {
      const MonotoneEntry& e = entry_with_truth(impl_->family, i);
      if (!e.truth->members_in_block(m, impl_->guards).empty()) continue;
      s = std::max(s, impl_->family.block_reach_stage(i, m, y, static_cast<Value>(k), impl_->guards));
    }
  }
  return s;
}

CheckResult Pi3Construction::check_stable_indices(int n_max, int samples) const {
  CheckResult result;
  const auto limits = stable_indices(n_max);
  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("inf"); };
  for (int n = 1; n <= n_max; ++n) {
    for (int a = 0; a < samples; ++a) {
      const int y = n + 1 + 2 * a;
      const int k_floor = stage_k_floor(n, y);
      for (int b = 0; b < samples; ++b) {
        const int k = k_floor + 5 * b;
        const int s_floor = stage_s_floor(n, y, k);
        for (int c = 0; c < samples; ++c) {
          const int s = s_floor + 9 * c;
          auto staged = stage_index(n, y, k, s);
          if (staged != limits[static_cast<std::size_t>(n)]) {
            result.failures.push_back("I(" + std::to_string(n) + ", " + std::to_string(y) + ", " + std::to_string(k) +
                                      ", " + std::to_string(s) + ") = " + show(staged) + " but I(" +
                                      std::to_string(n) + ") = " + show(limits[static_cast<std::size_t>(n)]));
          }
        }
      }
    }
  }
  return result;
}

namespace {

// Least member x of truth with lambda(x) > low, scanning blocks up to the guard.
std::optional<Natural> next_member(const SetDescriptor& truth, int low, const Guards& guards) {
  for (int m = low + 1; m <= guards.max_chain_position; ++m) {
    for (const Natural& x : truth.members_in_block(m, guards)) {
      if (low_bit(x) > low) return x;
    }
  }
  return std::nullopt;
}

bool links_hold(const Pi3Construction& c, int n, const std::vector<Natural>& xs, int s) {
  for (std::size_t g = 0; g + 1 < xs.size(); ++g) {
    if (c.q(n, high_bit(xs[g]), low_bit(xs[g + 1]), s) != xs[g]) return false;
  }
  return true;
}

}  // namespace

Pi3Chain build_chain(const Pi3Construction& construction, int i, int n, int count, int floor) {
  const Guards& guards = construction.guards();
  if (n < 1 || n > guards.max_chain_bits) {
    throw GuardError("chain position " + std::to_string(n) + " outside 1..max_chain_bits=" +
                     std::to_string(guards.max_chain_bits));
  }
  if (count < 1) throw DomainError("chains need at least one element");
  if (i < 0 || static_cast<std::size_t>(i) >= construction.family().size()) throw DomainError("index out of range");
  const MonotoneEntry& e = construction.family().entry(static_cast<std::size_t>(i));
  if (!e.truth || !e.settling) throw DomainError("entry " + e.name + " needs truth and settling oracles");
  if (e.truth->is_finite()) throw DomainError("truth(" + std::to_string(i) + ") is finite");
  if (!has_weak_apartness(NumberSet(e.truth->members_up_to(guards.max_chain_position, guards)))) {
    throw DomainError("truth(" + std::to_string(i) + ") fails weak apartness");
  }
  if (construction.stable_index(n) != std::optional<int>(i)) {
    throw DomainError("stable index of position " + std::to_string(n) + " is not " + std::to_string(i));
  }

  Pi3Chain chain{i, n, floor, {}, 0};
  auto first = next_member(*e.truth, std::max(floor, n), guards);
  if (!first) throw DomainError("no x_1 with lambda > " + std::to_string(std::max(floor, n)) + " below the guard");
  chain.elements.push_back(*first);
  auto low_for_next = [&](const Natural& prev) {
    const int y = high_bit(prev);
    return std::max(y, construction.stage_k_floor(n, y) - 1);
  };
  while (static_cast<int>(chain.elements.size()) + 1 < count) {
    auto next = next_member(*e.truth, low_for_next(chain.elements.back()), guards);
    if (!next) throw DomainError("horizon exhausted choosing x_" + std::to_string(chain.elements.size() + 1));
    chain.elements.push_back(*next);
  }
  if (count == 1) {
    chain.stage = high_bit(chain.elements.back());
    return chain;
  }
  // The last element fixes the stage; take the first one at which every link holds.
  int low = low_for_next(chain.elements.back());
  while (true) {
    auto last = next_member(*e.truth, low, guards);
    if (!last) {
      throw DomainError("horizon exhausted: no x_" + std::to_string(count) + " below 2^" +
                        std::to_string(guards.max_chain_position + 1) + " makes the links hold at s = mu(x_" +
                        std::to_string(count) + ")");
    }
    chain.elements.push_back(*last);
    if (links_hold(construction, n, chain.elements, high_bit(*last))) {
      chain.stage = high_bit(*last);
      return chain;
    }
    chain.elements.pop_back();
    low = low_bit(*last);
  }
}

CheckResult check_chain(const Pi3Construction& construction, const Pi3Chain& chain) {
  CheckResult result;
  const MonotoneEntry& e = construction.family().entry(static_cast<std::size_t>(chain.i));
  const auto& xs = chain.elements;
  if (xs.empty()) {
    result.failures.push_back("empty chain");
    return result;
  }
  if (low_bit(xs.front()) <= std::max(chain.floor, chain.n)) result.failures.push_back("lambda(x_1) too small");
  for (std::size_t g = 0; g < xs.size(); ++g) {
    if (e.truth && !e.truth->contains(xs[g])) result.failures.push_back(xs[g].str() + " is not in the truth");
    if (g + 1 < xs.size()) {
      if (high_bit(xs[g]) >= low_bit(xs[g + 1])) result.failures.push_back("x_g << x_{g+1} fails at g=" + std::to_string(g + 1));
      const int s = high_bit(xs.back());
      if (construction.q(chain.n, high_bit(xs[g]), low_bit(xs[g + 1]), s) != xs[g]) {
        result.failures.push_back("Q_n(mu(x_g), lambda(x_{g+1}), s) != x_g at g=" + std::to_string(g + 1));
      }
    }
  }
  return result;
}

DistinctRequests distinct_requests(const Pi3Construction& construction, int i, int n) {
  const int r = 1 << n;
  DistinctRequests out{build_chain(construction, i, n, r + 1, n), {}};
  CheckResult chain_check = check_chain(construction, out.chain);
  if (!chain_check) throw VerificationError("chain check failed: " + chain_check.failures.front());
  const Natural modulus = pow2(n);
  Natural suffix = out.chain.elements.back();
  std::vector<RequestRow> reversed;
  for (int h = r; h >= 1; --h) {
    suffix += out.chain.elements[static_cast<std::size_t>(h - 1)];
    if (low_bit(suffix) <= n) throw VerificationError("lambda(w_h) <= n");
    Natural res = construction.residue(n, suffix);
    reversed.push_back({suffix, res, pow2(n) + res});
  }
  out.rows.assign(reversed.rbegin(), reversed.rend());
  std::set<Natural> seen;
  for (std::size_t h = 0; h < out.rows.size(); ++h) {
    seen.insert(out.rows[h].residue);
    if (h + 1 < out.rows.size() && out.rows[h].residue != (out.rows[h + 1].residue + 1) % modulus) {
      throw VerificationError("R_0(n, w_h) != R_0(n, w_{h+1}) + 1 at h=" + std::to_string(h + 1));
    }
  }
  if (seen.size() != static_cast<std::size_t>(r)) throw VerificationError("request values do not exhaust B^n");
  return out;
}

Pi3Search find_witness(const Pi3Construction& construction, int i) {
  Pi3Search out;
  const Guards& guards = construction.guards();
  if (i < 0 || static_cast<std::size_t>(i) >= construction.family().size()) {
    out.reason = "family index out of range";
    return out;
  }
  const MonotoneEntry& e = construction.family().entry(static_cast<std::size_t>(i));
  if (!e.truth || !e.settling) {
    out.reason = "entry " + e.name + " has no truth/settling oracle";
    return out;
  }
  if (e.truth->is_finite()) {
    out.reason = "truth(" + std::to_string(i) + ") is finite";
    return out;
  }
  const auto limits = construction.stable_indices(guards.max_chain_bits);
  int n = 0;
  for (int m = 1; m <= guards.max_chain_bits && n == 0; ++m) {
    if (limits[static_cast<std::size_t>(m)] == std::optional<int>(i)) n = m;
  }
  if (n == 0) {
    out.reason = "no position n <= max_chain_bits=" + std::to_string(guards.max_chain_bits) +
                 " has stable index " + std::to_string(i);
    return out;
  }
  DistinctRequests dr;
  try {
    dr = distinct_requests(construction, i, n);
  } catch (const std::exception& ex) {
    out.reason = ex.what();
    return out;
  }
  auto members = e.truth->members_in_block(n, guards);
  if (members.empty()) throw std::logic_error("stable index " + std::to_string(i) + " at n with empty B^n part");
  const Natural& x = members.front();
  for (const RequestRow& row : dr.rows) {
    if (row.request != x) continue;
    Pi3Witness w;
    w.i = i;
    w.n = n;
    w.chain = dr.chain.elements;
    for (const RequestRow& r : dr.rows) w.sums.push_back(r.w);
    w.x = x;
    w.w = row.w;
    w.color_w = construction.color(w.w);
    w.color_with_x = construction.color(w.w + x);
    out.witness = w;
    return out;
  }
  out.reason = "no w_h requests " + x.str();
  return out;
}

CheckResult verify_witness(const MonotoneFamily& family, const Pi3Witness& w, const Guards& guards) {
  CheckResult result;
  auto fail = [&](std::string m) { result.failures.push_back(std::move(m)); };
  if (w.i < 0 || static_cast<std::size_t>(w.i) >= family.size()) {
    fail("family index out of range");
    return result;
  }
  const MonotoneEntry& e = family.entry(static_cast<std::size_t>(w.i));
  if (w.chain.size() != (std::size_t{1} << w.n) + 1 || w.sums.size() + 1 != w.chain.size()) {
    fail("chain must have 2^n + 1 elements and 2^n sums");
    return result;
  }
  if (w.x < 1 || w.w < 1 || std::any_of(w.chain.begin(), w.chain.end(), [](const Natural& v) { return v < 1; })) {
    fail("witness values must be positive");
    return result;
  }
  if (high_bit(w.x) != w.n) fail("x is not in B^n");
  if (e.truth && !e.truth->contains(w.x)) fail("x is not in the truth");
  Natural suffix = w.chain.back();
  for (std::size_t h = w.sums.size(); h-- > 0;) {
    suffix += w.chain[h];
    if (w.sums[h] != suffix) fail("w_" + std::to_string(h + 1) + " is not the suffix sum of the chain");
  }
  if (std::find(w.sums.begin(), w.sums.end(), w.w) == w.sums.end()) fail("w is not one of the sums w_h");
  if (low_bit(w.w) <= w.n) fail("lambda(w) <= n");

  Pi3Construction fresh(family, guards);
  Pi3Chain chain{w.i, w.n, w.n, w.chain, high_bit(w.chain.back())};
  for (const auto& f : check_chain(fresh, chain).failures) fail(f);
  if (low_bit(w.w) > w.n && fresh.request(w.n, w.w) != w.x) fail("R(n, w) != x");
  const int c_w = color_parity(fresh.request_function(), Dyadic(w.w));
  const int c_x = color_parity(fresh.request_function(), Dyadic(w.w + w.x));
  if (c_w != w.color_w || c_x != w.color_with_x) fail("recorded colors do not match a recomputation");
  if (c_w == c_x) fail("c(w) == c(w + x)");
  return result;
}

}  // namespace hindman
