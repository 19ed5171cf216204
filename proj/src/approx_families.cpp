#include "hindman/approx_families.hpp"

#include <algorithm>
#include <sstream>

#include "hindman/errors.hpp"

namespace hindman {

namespace {

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

void check_block_scan(int n, const Guards& guards) {
  if (n > guards.max_block_bits) {
    throw GuardError("scan of B^" + std::to_string(n) + " exceeds max_block_bits=" +
                     std::to_string(guards.max_block_bits));
  }
}

std::optional<Natural> scan_block(int n, const std::function<bool(const Natural&)>& pred, const Guards& guards) {
  check_block_scan(n, guards);
  for (const Natural& x : BlockRange(n)) {
    if (pred(x)) return x;
  }
  return std::nullopt;
}

// Ceil division for non-negative numerators and positive denominators.
Value ceil_div(Value a, Value b) { return (a + b - 1) / b; }

}  // namespace

bool ExponentFilter::accepts(int e) const {
  if (e < min) return false;
  if (max && e > *max) return false;
  return floor_mod(e - residue, modulus) == 0;
}

SetDescriptor SetDescriptor::list(NumberSet members) {
  SetDescriptor d;
  d.kind_ = Kind::list;
  d.list_ = std::move(members);
  std::ostringstream os;
  os << d.list_;
  d.description_ = os.str();
  return d;
}

SetDescriptor SetDescriptor::scaled_powers(std::vector<Natural> multipliers, ExponentFilter filter) {
  if (multipliers.empty()) throw DomainError("scaled_powers needs at least one multiplier");
  if (filter.modulus < 1) throw DomainError("exponent modulus must be >= 1");
  std::sort(multipliers.begin(), multipliers.end());
  multipliers.erase(std::unique(multipliers.begin(), multipliers.end()), multipliers.end());
  for (const Natural& m : multipliers) {
    if (m < 1 || !test_bit(m, 0)) throw DomainError("multiplier " + m.str() + " must be odd and positive");
  }
  SetDescriptor d;
  d.kind_ = Kind::scaled_powers;
  d.multipliers_ = std::move(multipliers);
  d.filter_ = filter;
  std::ostringstream os;
  os << "{m*2^e : m in {";
  for (std::size_t j = 0; j < d.multipliers_.size(); ++j) os << (j ? "," : "") << d.multipliers_[j];
  os << "}, e = " << filter.residue << " mod " << filter.modulus << ", e >= " << filter.min;
  if (filter.max) os << ", e <= " << *filter.max;
  os << "}";
  d.description_ = os.str();
  return d;
}

SetDescriptor SetDescriptor::predicate(std::function<bool(const Natural&)> contains, bool finite,
                                       std::string description) {
  SetDescriptor d;
  d.kind_ = Kind::predicate;
  d.predicate_ = std::move(contains);
  d.finite_ = finite;
  d.description_ = std::move(description);
  return d;
}

bool SetDescriptor::contains(const Natural& x) const {
  if (x < 1) return false;
  switch (kind_) {
    case Kind::list:
      return list_.contains(x);
    case Kind::scaled_powers: {
      const int e = low_bit(x);
      const Natural m = x >> e;
      return filter_.accepts(e) && std::binary_search(multipliers_.begin(), multipliers_.end(), m);
    }
    case Kind::predicate:
      return predicate_(x);
  }
  return false;
}

bool SetDescriptor::is_finite() const {
  switch (kind_) {
    case Kind::list:
      return true;
    case Kind::scaled_powers:
      return filter_.max.has_value();
    case Kind::predicate:
      return finite_;
  }
  return false;
}

std::vector<Natural> SetDescriptor::members_in_block(int n, const Guards& guards) const {
  std::vector<Natural> out;
  if (n < 0) return out;
  switch (kind_) {
    case Kind::list:
      for (const Natural& x : list_) {
        if (high_bit(x) == n) out.push_back(x);
      }
      break;
    case Kind::scaled_powers:
      for (const Natural& m : multipliers_) {
        const int e = n - high_bit(m);
        if (e >= 0 && filter_.accepts(e)) out.push_back(m << e);
      }
      std::sort(out.begin(), out.end());
      break;
    case Kind::predicate:
      check_block_scan(n, guards);
      for (const Natural& x : BlockRange(n)) {
        if (predicate_(x)) out.push_back(x);
      }
      break;
  }
  return out;
}

std::optional<Natural> SetDescriptor::first_member_in_block(int n, const Guards& guards) const {
  if (kind_ == Kind::predicate) return scan_block(n, predicate_, guards);
  auto members = members_in_block(n, guards);
  if (members.empty()) return std::nullopt;
  return members.front();
}

std::optional<Natural> SetDescriptor::first_non_member_in_block(int n) const {
  const Natural end = pow2(n + 1);
  for (Natural x = pow2(n); x < end; ++x) {
    if (!contains(x)) return x;
  }
  return std::nullopt;
}

std::vector<Natural> SetDescriptor::members_up_to(int horizon, const Guards& guards) const {
  std::vector<Natural> out;
  for (int n = 0; n <= horizon; ++n) {
    auto block_members = members_in_block(n, guards);
    out.insert(out.end(), block_members.begin(), block_members.end());
  }
  return out;
}

bool Delta3Family::approx(int i, const Natural& x, int k, int s) const {
  if (i < 0 || static_cast<std::size_t>(i) >= entries_.size()) return false;
  return entries_[static_cast<std::size_t>(i)].approx(x, k, s);
}

std::optional<Natural> Delta3Family::first_in_block(int i, int n, int k, int s, const Guards& guards) const {
  if (i < 0 || static_cast<std::size_t>(i) >= entries_.size()) return std::nullopt;
  const Delta3Entry& e = entries_[static_cast<std::size_t>(i)];
  if (e.first_in_block) return e.first_in_block(n, k, s);
  return scan_block(n, [&](const Natural& x) { return e.approx(x, k, s); }, guards);
}

Delta3Entry instant_entry(SetDescriptor set, std::string name) {
  Delta3Entry e;
  e.name = std::move(name);
  e.approx = [set](const Natural& x, int, int) { return set.contains(x); };
  e.first_in_block = [set](int n, int, int) { return set.first_member_in_block(n); };
  e.truth = std::move(set);
  e.settling = Delta3Settling{[](int) { return 0; }, [](int, int) { return 0; }};
  return e;
}

Delta3Entry delayed_entry(SetDescriptor set, DelaySchedule delay, std::string name) {
  Delta3Entry e;
  e.name = std::move(name);
  e.approx = [set, delay](const Natural& x, int k, int s) {
    const bool truth = set.contains(x);
    return s >= delay.at(k, high_bit(x)) ? truth : !truth;
  };
  // The delay only depends on mu(x), so it is constant on a block.
  e.first_in_block = [set, delay](int n, int k, int s) {
    return s >= delay.at(k, n) ? set.first_member_in_block(n) : set.first_non_member_in_block(n);
  };
  e.truth = std::move(set);
  e.settling = Delta3Settling{
      [](int) { return 0; },
      [delay](int k, int horizon) {
        return std::max({delay.at(k, 0), delay.at(k, horizon), 0});
      }};
  return e;
}

Delta3Family instant_delta3(std::vector<SetDescriptor> sets, std::vector<std::string> names) {
  std::vector<Delta3Entry> entries;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string name = i < names.size() ? names[i] : sets[i].description();
    entries.push_back(instant_entry(std::move(sets[i]), std::move(name)));
  }
  return Delta3Family(std::move(entries));
}

Delta3Family delayed_delta3(std::vector<SetDescriptor> sets, DelaySchedule delay) {
  std::vector<Delta3Entry> entries;
  for (auto& set : sets) {
    std::string name = set.description();
    entries.push_back(delayed_entry(std::move(set), delay, std::move(name)));
  }
  return Delta3Family(std::move(entries));
}

Value MonotoneFamily::value(int i, const Natural& x, int y, int s) const {
  if (i < 0 || static_cast<std::size_t>(i) >= entries_.size()) return static_cast<Value>(std::max(s, 0));
  return entries_[static_cast<std::size_t>(i)].value(x, y, s);
}

BlockMinimum MonotoneFamily::block_minimum(int i, int n, int y, int s, const Guards& guards) const {
  if (i < 0 || static_cast<std::size_t>(i) >= entries_.size()) {
    return {pow2(n), static_cast<Value>(std::max(s, 0))};
  }
  const MonotoneEntry& e = entries_[static_cast<std::size_t>(i)];
  if (e.block_minimum) return e.block_minimum(n, y, s);
  check_block_scan(n, guards);
  BlockMinimum best{pow2(n), e.value(pow2(n), y, s)};
  for (const Natural& x : BlockRange(n)) {
    Value v = e.value(x, y, s);
    if (v < best.value) best = {x, v};
  }
  return best;
}

int MonotoneFamily::block_reach_stage(int i, int n, int y, Value target, const Guards& guards) const {
  if (i < 0 || static_cast<std::size_t>(i) >= entries_.size()) return static_cast<int>(target);
  const MonotoneEntry& e = entries_[static_cast<std::size_t>(i)];
  if (!e.settling || !e.truth) throw DomainError("family entry " + e.name + " has no settling oracle");
  if (e.settling->block_reach_stage) return e.settling->block_reach_stage(n, y, target);
  check_block_scan(n, guards);
  int stage = 0;
  for (const Natural& x : BlockRange(n)) {
    if (!e.truth->contains(x)) stage = std::max(stage, e.settling->reach_stage(x, y, target));
  }
  return stage;
}

MonotoneEntry monotone_entry(SetDescriptor set, MonotoneSchedule schedule, std::string name) {
  if (schedule.ceiling_constant < 0 || schedule.ceiling_per_y < 0) {
    throw DomainError("monotone schedule ceilings must be non-negative");
  }
  if (schedule.ramp_per_stage < 1) throw DomainError("monotone schedule ramp must be >= 1");
  const Value c0 = static_cast<Value>(schedule.ceiling_constant);
  const Value c1 = static_cast<Value>(schedule.ceiling_per_y);
  const Value r = static_cast<Value>(schedule.ramp_per_stage);
  auto ceiling = [c0, c1](int y) { return c0 + c1 * static_cast<Value>(std::max(y, 0)); };
  auto ramp = [r](int s) { return r * static_cast<Value>(std::max(s, 0)); };

  MonotoneEntry e;
  e.name = std::move(name);
  e.value = [set, ceiling, ramp](const Natural& x, int y, int s) {
    return set.contains(x) ? std::min(ceiling(y), ramp(s)) : ramp(s);
  };
  // Members share one value, so the least member wins unless everything ties.
  e.block_minimum = [set, ceiling, ramp](int n, int y, int s) -> BlockMinimum {
    auto first = set.first_member_in_block(n);
    if (first && ceiling(y) < ramp(s)) return {*first, ceiling(y)};
    return {pow2(n), ramp(s)};
  };
  MonotoneSettling settling;
  settling.member_limit = [ceiling](const Natural&, int y) { return ceiling(y); };
  settling.member_stage = [ceiling, r](const Natural&, int y) { return static_cast<int>(ceil_div(ceiling(y), r)); };
  settling.divergence_start = [](const Natural&) { return 0; };
  settling.reach_stage = [r](const Natural&, int, Value target) { return static_cast<int>(ceil_div(target, r)); };
  settling.block_reach_stage = [r](int, int, Value target) { return static_cast<int>(ceil_div(target, r)); };
  e.truth = std::move(set);
  e.settling = std::move(settling);
  return e;
}

MonotoneFamily monotone_from_sets(std::vector<SetDescriptor> sets, MonotoneSchedule schedule) {
  std::vector<MonotoneEntry> entries;
  for (auto& set : sets) {
    std::string name = set.description();
    entries.push_back(monotone_entry(std::move(set), schedule, std::move(name)));
  }
  return MonotoneFamily(std::move(entries));
}

std::vector<int> ValidationBounds::default_params() { return {0, 1, 2, 3, 5, 8, 13, 21, 34, 64, 128}; }

namespace {

std::string where(int i, const Natural& x, int a, int s) {
  return "i=" + std::to_string(i) + " x=" + x.str() + " (" + std::to_string(a) + ", " + std::to_string(s) + ")";
}

void note(ValidationReport& report, std::string message) {
  if (report.violations.size() < 50) report.violations.push_back(std::move(message));
}

}  // namespace

ValidationReport validate_family(const Delta3Family& family, const ValidationBounds& bounds) {
  ValidationReport report;
  const int indices = std::min<int>(bounds.indices, static_cast<int>(family.size()));
  const Natural x_end = pow2(bounds.max_x_bits);
  const int horizon = bounds.max_x_bits - 1;
  for (int i = 0; i < indices; ++i) {
    const Delta3Entry& e = family.entry(static_cast<std::size_t>(i));
    try {
      for (Natural x = 1; x < x_end; ++x) {
        for (int k : bounds.params) {
          for (int s : bounds.params) {
            const bool a = e.approx(x, k, s);
            ++report.checks;
            if (!e.truth || !e.settling) continue;
            const int k_bound = e.settling->k_bound(horizon);
            if (k > k_bound && s > e.settling->s_bound(k, horizon) && a != e.truth->contains(x)) {
              note(report, "settling: " + e.name + " " + where(i, x, k, s) + " disagrees with truth");
            }
          }
        }
      }
      Guards guards;
      for (int n = 0; n <= bounds.block_bits; ++n) {
        for (int k : bounds.params) {
          for (int s : bounds.params) {
            auto fast = family.first_in_block(i, n, k, s);
            auto slow = scan_block(n, [&](const Natural& x) { return e.approx(x, k, s); }, guards);
            ++report.checks;
            if (fast != slow) {
              note(report, "accelerator: " + e.name + " block " + std::to_string(n) + " (" + std::to_string(k) +
                               ", " + std::to_string(s) + ") disagrees with a scan");
            }
          }
        }
      }
    } catch (const std::exception& ex) {
      note(report, "totality: " + e.name + " threw: " + ex.what());
    }
  }
  return report;
}

ValidationReport validate_family(const MonotoneFamily& family, const ValidationBounds& bounds) {
  ValidationReport report;
  const int indices = std::min<int>(bounds.indices, static_cast<int>(family.size()));
  const Natural x_end = pow2(bounds.max_x_bits);
  for (int i = 0; i < indices; ++i) {
    const MonotoneEntry& e = family.entry(static_cast<std::size_t>(i));
    try {
      for (Natural x = 1; x < x_end; ++x) {
        for (int y : bounds.params) {
          for (int s : bounds.params) {
            const Value v = e.value(x, y, s);
            report.checks += 2;
            if (e.value(x, y + 1, s) < v) {
              note(report, "monotonicity in y: " + e.name + " " + where(i, x, y, s));
            }
            if (e.value(x, y, s + 1) < v) {
              note(report, "monotonicity in s: " + e.name + " " + where(i, x, y, s));
            }
          }
          if (!e.truth || !e.settling) continue;
          const MonotoneSettling& st = *e.settling;
          if (e.truth->contains(x)) {
            const Value limit = st.member_limit(x, y);
            const int stage = st.member_stage(x, y);
            for (int s : {stage, stage + 1, stage + 7, stage + 100}) {
              ++report.checks;
              if (e.value(x, y, s) != limit) {
                note(report, "member settling: " + e.name + " " + where(i, x, y, s));
              }
            }
          } else if (y > st.divergence_start(x)) {
            for (Value target : {Value{1}, Value{10}, Value{100}}) {
              const int s = st.reach_stage(x, y, target);
              ++report.checks;
              if (e.value(x, y, s) < target) {
                note(report, "divergence: " + e.name + " " + where(i, x, y, s) + " below " + std::to_string(target));
              }
            }
          }
        }
      }
      Guards guards;
      MonotoneFamily single({e});
      MonotoneEntry bare = e;
      bare.block_minimum = nullptr;
      MonotoneFamily scanned({bare});
      for (int n = 0; n <= bounds.block_bits; ++n) {
        for (int y : bounds.params) {
          for (int s : bounds.params) {
            auto fast = single.block_minimum(0, n, y, s, guards);
            auto slow = scanned.block_minimum(0, n, y, s, guards);
            ++report.checks;
            if (fast.argmin != slow.argmin || fast.value != slow.value) {
              note(report, "block minimum: " + e.name + " block " + std::to_string(n) + " (" + std::to_string(y) +
                               ", " + std::to_string(s) + ") disagrees with a scan");
            }
          }
        }
      }
    } catch (const std::exception& ex) {
      note(report, "totality: " + e.name + " threw: " + ex.what());
    }
  }
  return report;
}

}  // namespace hindman
