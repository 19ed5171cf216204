#include "hindman/dyadic.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "hindman/errors.hpp"

namespace hindman {

Natural parse_natural(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DomainError("not a decimal natural number: '" + text + "'");
  }
  return Natural(text);
}

std::string to_string(const Natural& x) { return x.str(); }

Dyadic::Dyadic(Natural value) : value_(std::move(value)) {
  if (value_ < 1) throw DomainError("dyadic value must be >= 1, got " + value_.str());
}

Dyadic Dyadic::from_digits(const std::vector<int>& positions) {
  Natural v = 0;
  for (int p : positions) {
    if (p < 0 || test_bit(v, p)) throw DomainError("digit positions must be distinct and non-negative");
    boost::multiprecision::bit_set(v, p);
  }
  return Dyadic(std::move(v));
}

std::vector<int> Dyadic::digits() const {
  std::vector<int> out;
  for (int p = lambda(); p <= mu(); ++p) {
    if (test_bit(value_, p)) out.push_back(p);
  }
  return out;
}

int Dyadic::popcount() const { return static_cast<int>(digits().size()); }

std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << x.value(); }

bool apart(const Dyadic& x, const Dyadic& y) { return x.mu() < y.lambda(); }

NumberSet::NumberSet(std::vector<Natural> values) : elements_(std::move(values)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty() && elements_.front() < 1) throw DomainError("number sets hold positive naturals only");
}

NumberSet::NumberSet(std::initializer_list<std::uint64_t> values)
    : NumberSet(std::vector<Natural>(values.begin(), values.end())) {}

bool NumberSet::contains(const Natural& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool NumberSet::is_subset_of(const NumberSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::ostream& operator<<(std::ostream& os, const NumberSet& set) {
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set.elements()[i];
  return os << '}';
}

BlockRange::BlockRange(int n) : n_(n) {
  if (n < 0) throw DomainError("block index must be >= 0");
}

NumberSet block(int n, const Guards& guards) {
  if (n < 0) throw DomainError("block index must be >= 0");
  if (n > guards.max_block_bits) {
    throw GuardError("block(" + std::to_string(n) + ") exceeds max_block_bits=" + std::to_string(guards.max_block_bits));
  }
  std::vector<Natural> out;
  out.reserve(std::size_t{1} << n);
  for (const Natural& x : BlockRange(n)) out.push_back(x);
  return NumberSet(std::move(out));
}

NumberSet block_leq(int n, const Guards& guards) {
  if (n < 0) throw DomainError("block index must be >= 0");
  if (n > guards.max_block_bits) {
    throw GuardError("block_leq(" + std::to_string(n) + ") exceeds max_block_bits=" +
                     std::to_string(guards.max_block_bits));
  }
  std::vector<Natural> out;
  for (Natural x = 1; x < pow2(n + 1); ++x) out.push_back(x);
  return NumberSet(std::move(out));
}

NumberSet finite_sums(const NumberSet& h, std::optional<int> max_terms, const Guards& guards) {
  if (max_terms && *max_terms < 1) throw DomainError("finite_sums term cap must be >= 1");
  if (static_cast<int>(h.size()) > guards.max_sum_terms) {
    throw GuardError("finite_sums over " + std::to_string(h.size()) + " elements exceeds max_sum_terms=" +
                     std::to_string(guards.max_sum_terms));
  }
  const int cap = max_terms.value_or(static_cast<int>(h.size()));
  // sums reachable with exactly t terms, grown one element at a time
  std::vector<std::vector<Natural>> by_terms(static_cast<std::size_t>(cap) + 1);
  for (const Natural& x : h) {
    for (int t = cap; t >= 2; --t) {
      for (const Natural& partial : by_terms[t - 1]) by_terms[t].push_back(partial + x);
    }
    by_terms[1].push_back(x);
  }
  std::vector<Natural> all;
  for (auto& bucket : by_terms) all.insert(all.end(), bucket.begin(), bucket.end());
  return NumberSet(std::move(all));
}

ApartnessCheck has_weak_apartness(const NumberSet& h) {
  std::map<int, std::vector<Natural>> by_mu;
  std::map<int, std::vector<Natural>> by_lambda;
  for (const Natural& x : h) {
    auto& same_mu = by_mu[high_bit(x)];
    same_mu.push_back(x);
    if (same_mu.size() == 2) return {false, same_mu};
    auto& same_lambda = by_lambda[low_bit(x)];
    same_lambda.push_back(x);
    if (same_lambda.size() == 3) return {false, same_lambda};
  }
  return {};
}

ApartnessCheck has_apartness(const NumberSet& h) {
  const auto& e = h.elements();
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (high_bit(e[i - 1]) >= low_bit(e[i])) return {false, {e[i - 1], e[i]}};
  }
  return {};
}

}  // namespace hindman
