#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hindman/dyadic.hpp"
#include "hindman/guards.hpp"

namespace hindman {

// Exponents e with e >= min, e <= max (if set) and e = residue mod modulus.
struct ExponentFilter {
  int modulus = 1;
  int residue = 0;
  int min = 0;
  std::optional<int> max;

  bool accepts(int e) const;
  friend bool operator==(const ExponentFilter&, const ExponentFilter&) = default;
};

// A decidable set of positive naturals with cheap per-block queries.
class SetDescriptor {
 public:
  enum class Kind { list, scaled_powers, predicate };

  static SetDescriptor list(NumberSet members);
  // {m * 2^e : m in multipliers, filter accepts e}; multipliers must be odd.
  static SetDescriptor scaled_powers(std::vector<Natural> multipliers, ExponentFilter filter);
  static SetDescriptor predicate(std::function<bool(const Natural&)> contains, bool finite, std::string description);

  Kind kind() const { return kind_; }
  const NumberSet& members() const { return list_; }
  const std::vector<Natural>& multipliers() const { return multipliers_; }
  const ExponentFilter& filter() const { return filter_; }
  const std::string& description() const { return description_; }

  bool contains(const Natural& x) const;
  bool is_finite() const;
  // Sorted members of B^n. Predicate sets scan the block (guarded).
  std::vector<Natural> members_in_block(int n, const Guards& guards = {}) const;
  std::optional<Natural> first_member_in_block(int n, const Guards& guards = {}) const;
  std::optional<Natural> first_non_member_in_block(int n) const;
  // Members of B^{<=horizon}, increasing.
  std::vector<Natural> members_up_to(int horizon, const Guards& guards = {}) const;

 private:
  Kind kind_ = Kind::list;
  NumberSet list_;
  std::vector<Natural> multipliers_;
  ExponentFilter filter_;
  std::function<bool(const Natural&)> predicate_;
  bool finite_ = false;
  std::string description_;
};

// Settling bounds for X = B^{<=horizon}: for k > k_bound(horizon) and
// s > s_bound(k, horizon) the approximation equals the truth on X.
struct Delta3Settling {
  std::function<int(int horizon)> k_bound;
  std::function<int(int k, int horizon)> s_bound;
};

struct Delta3Entry {
  std::string name;
  std::function<bool(const Natural& x, int k, int s)> approx;
  // Least x in B^n with approx(x, k, s) = 1. Optional; scans the block if unset.
  std::function<std::optional<Natural>(int n, int k, int s)> first_in_block;
  std::optional<SetDescriptor> truth;
  std::optional<Delta3Settling> settling;
};

// Indexed 0/1 approximations A_i(x, k, s). Indices past the end read 0.
class Delta3Family {
 public:
  Delta3Family() = default;
  explicit Delta3Family(std::vector<Delta3Entry> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  const Delta3Entry& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<Delta3Entry>& entries() const { return entries_; }

  bool approx(int i, const Natural& x, int k, int s) const;
  std::optional<Natural> first_in_block(int i, int n, int k, int s, const Guards& guards = {}) const;

 private:
  std::vector<Delta3Entry> entries_;
};

// approx = truth for all k, s.
Delta3Family instant_delta3(std::vector<SetDescriptor> sets, std::vector<std::string> names = {});

// Stage from which A_i(x, k, s) is correct: constant + per_k * k + per_mu * mu(x).
struct DelaySchedule {
  int constant = 0;
  int per_k = 0;
  int per_mu = 0;
  int at(int k, int mu) const { return constant + per_k * k + per_mu * mu; }
};

Delta3Entry instant_entry(SetDescriptor set, std::string name);
// approx = truth for s >= delay, 1 - truth before.
Delta3Entry delayed_entry(SetDescriptor set, DelaySchedule delay, std::string name);
Delta3Family delayed_delta3(std::vector<SetDescriptor> sets, DelaySchedule delay);

using Value = std::uint64_t;

struct BlockMinimum {
  Natural argmin;  // least x in B^n attaining the minimum
  Value value;
};

struct MonotoneSettling {
  // Members: F(x, y, s) = member_limit(x, y) for s >= member_stage(x, y).
  std::function<Value(const Natural& x, int y)> member_limit;
  std::function<int(const Natural& x, int y)> member_stage;
  // Non-members: for y > divergence_start(x), F(x, y, s) >= T once s >= reach_stage(x, y, T).
  std::function<int(const Natural& x)> divergence_start;
  std::function<int(const Natural& x, int y, Value target)> reach_stage;
  // Optional: max of reach_stage over the non-members of B^n.
  std::function<int(int n, int y, Value target)> block_reach_stage;
};

struct MonotoneEntry {
  std::string name;
  std::function<Value(const Natural& x, int y, int s)> value;
  std::function<BlockMinimum(int n, int y, int s)> block_minimum;  // optional
  std::optional<SetDescriptor> truth;
  std::optional<MonotoneSettling> settling;
};

// Indexed F(i, x, y, s), non-decreasing in y and in s. Indices past the end
// read F = s.
class MonotoneFamily {
 public:
  MonotoneFamily() = default;
  explicit MonotoneFamily(std::vector<MonotoneEntry> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  const MonotoneEntry& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<MonotoneEntry>& entries() const { return entries_; }

  Value value(int i, const Natural& x, int y, int s) const;
  BlockMinimum block_minimum(int i, int n, int y, int s, const Guards& guards = {}) const;
  // Least s0 such that every non-member of B^n has F >= target for s >= s0.
  int block_reach_stage(int i, int n, int y, Value target, const Guards& guards = {}) const;

 private:
  std::vector<MonotoneEntry> entries_;
};

// Members: F = min(ceiling_constant + ceiling_per_y * y, ramp_per_stage * s).
// Non-members: F = ramp_per_stage * s.
struct MonotoneSchedule {
  std::int64_t ceiling_constant = 0;
  std::int64_t ceiling_per_y = 0;
  std::int64_t ramp_per_stage = 1;
};

MonotoneEntry monotone_entry(SetDescriptor set, MonotoneSchedule schedule, std::string name);
// Throws DomainError on negative ceilings or a ramp < 1.
MonotoneFamily monotone_from_sets(std::vector<SetDescriptor> sets, MonotoneSchedule schedule = {});

struct ValidationBounds {
  int indices = 4;
  int max_x_bits = 12;                      // x < 2^max_x_bits
  std::vector<int> params = default_params();  // sampled k / y and s values
  int block_bits = 8;                       // accelerator vs scan check

  static std::vector<int> default_params();
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t checks = 0;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_family(const Delta3Family& family, const ValidationBounds& bounds = {});
ValidationReport validate_family(const MonotoneFamily& family, const ValidationBounds& bounds = {});

}  // namespace hindman
