#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hindman/guards.hpp"

namespace hindman {

// Exact integers. Values in this library are naturals; Integer is used for
// signed path counts.
using Natural = boost::multiprecision::cpp_int;
using Integer = boost::multiprecision::cpp_int;

inline Natural pow2(int n) { return Natural(1) << n; }

// Highest / lowest binary digit position of x > 0.
inline int high_bit(const Natural& x) { return static_cast<int>(boost::multiprecision::msb(x)); }
inline int low_bit(const Natural& x) { return static_cast<int>(boost::multiprecision::lsb(x)); }
inline bool test_bit(const Natural& x, int p) { return boost::multiprecision::bit_test(x, p); }

Natural parse_natural(const std::string& text);
std::string to_string(const Natural& x);

// A positive natural number viewed through its set of binary digit positions.
class Dyadic {
 public:
  // Throws DomainError for values < 1.
  explicit Dyadic(Natural value);
  Dyadic(std::uint64_t value) : Dyadic(Natural(value)) {}  // NOLINT(google-explicit-constructor)
  Dyadic(int value) : Dyadic(Natural(value)) {}            // NOLINT(google-explicit-constructor)

  static Dyadic from_digits(const std::vector<int>& positions);

  const Natural& value() const { return value_; }
  int mu() const { return high_bit(value_); }
  int lambda() const { return low_bit(value_); }
  std::vector<int> digits() const;
  int popcount() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) { return Dyadic(a.value_ + b.value_); }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Natural value_;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& x);

struct Measures {
  int mu;
  int lambda;
  friend bool operator==(const Measures&, const Measures&) = default;
};

// (mu(x), lambda(x)); positivity is enforced by Dyadic.
inline Measures measures(const Dyadic& x) { return {x.mu(), x.lambda()}; }

// x << y: mu(x) < lambda(y).
bool apart(const Dyadic& x, const Dyadic& y);

// Finite strictly increasing set of positive naturals.
class NumberSet {
 public:
  NumberSet() = default;
  // Sorts and deduplicates; throws DomainError on zero.
  explicit NumberSet(std::vector<Natural> values);
  NumberSet(std::initializer_list<std::uint64_t> values);

  const std::vector<Natural>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const Natural& x) const;
  const Natural& front() const { return elements_.front(); }
  const Natural& back() const { return elements_.back(); }
  bool is_subset_of(const NumberSet& other) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const NumberSet&, const NumberSet&) = default;

 private:
  std::vector<Natural> elements_;
};

std::ostream& operator<<(std::ostream& os, const NumberSet& set);

// Lazy increasing enumeration of B^n = [2^n, 2^(n+1)); unbounded in n.
class BlockRange {
 public:
  class iterator {
   public:
    using value_type = Natural;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(Natural current) : current_(std::move(current)) {}  // NOLINT
    const Natural& operator*() const { return current_; }
    iterator& operator++() {
      ++current_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++current_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.current_ == b.current_; }

   private:
    Natural current_;
  };

  explicit BlockRange(int n);
  iterator begin() const { return {pow2(n_)}; }
  iterator end() const { return {pow2(n_ + 1)}; }
  int bit() const { return n_; }

 private:
  int n_;
};

// B^n materialized; GuardError above guards.max_block_bits.
NumberSet block(int n, const Guards& guards = {});
// B^{<=n} = {1, ..., 2^(n+1) - 1}.
NumberSet block_leq(int n, const Guards& guards = {});

// FS(H), or FS^{<=k}(H) when max_terms is given.
NumberSet finite_sums(const NumberSet& h, std::optional<int> max_terms = std::nullopt,
                      const Guards& guards = {});

// Result of a weak-apartness check; on failure `violation` holds the offending
// pair (shared mu) or triple (shared lambda).
struct ApartnessCheck {
  bool holds = true;
  std::vector<Natural> violation;
  explicit operator bool() const { return holds; }
};

ApartnessCheck has_weak_apartness(const NumberSet& h);
// Every consecutive pair x < y satisfies x << y; the violation is the first failing pair.
ApartnessCheck has_apartness(const NumberSet& h);

}  // namespace hindman
