#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hindman/approx_families.hpp"
#include "hindman/check.hpp"
#include "hindman/tree_coloring.hpp"

namespace hindman {

struct CandidateSet {
  int i = 0;
  int k = 0;
  int s = 0;
  std::vector<int> members;  // increasing bit positions in (i, s)
};

// Priority request function built from a 0/1 approximation family, and the
// 2-coloring it induces. Copies share memo tables.
class Delta3Construction {
 public:
  explicit Delta3Construction(Delta3Family family, Guards guards = {});

  const Delta3Family& family() const;
  const Guards& guards() const;

  // a_i(n, k, s): some x in B^n has A_i(x, k, s) = 1.
  bool block_indicator(int i, int n, int k, int s) const;
  // First 2^i positions n in (i, s) with a_i(n, k, s) = 1.
  CandidateSet candidate_set(int i, int k, int s) const;
  // min({i < n : n in C_i(lambda(w), mu(w))} u {n}); DomainError unless n < lambda(w).
  int chooser(int n, const Natural& w) const;
  int chooser_profile(int n, int k, int s) const;
  Natural request(int n, const Natural& w) const;
  Natural request_profile(int n, int k, int s) const;
  RequestFunction request_function() const;

  int color(const Natural& w) const;
  const TreeColoring& tree() const;

  // First 2^i positions n > i with B^n meeting truth(i), scanned up to
  // guards.max_position. DomainError if the entry has no truth oracle or the
  // scan runs out.
  CandidateSet candidate_limit(int i) const;
  // candidate_set(i, k, s) == candidate_limit(i) for sampled (k, s) past the
  // settling bounds.
  CheckResult check_candidate_limit(int i, int samples = 3) const;

 private:
  struct Impl;
  explicit Delta3Construction(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

struct Delta3Witness {
  int i = 0;
  std::string mode;  // "oracle" or "blind"
  Natural x, w1, w2;
  int color_sum = 0;         // c(w1 + w2)
  int color_with_x = 0;      // c(x + w1 + w2)
  std::vector<int> limit;    // C_i (oracle mode)
  int K = 0, k = 0, s_k = 0, s = 0;
};

struct Delta3Search {
  std::optional<Delta3Witness> witness;
  std::string reason;  // why no witness was produced
};

// Oracle-guided: walks the settling bounds to choose w1, w2 and then the x
// with R(mu(x), w1 + w2) = x. Needs truth and settling oracles and an
// infinite weakly apart truth(i) (checked up to guards.max_position).
Delta3Search find_witness(const Delta3Construction& construction, int i);
// Blind: tries x << w1 << w2 from truth(i) below 2^bound_bits, ordered by
// (w2, w1, x), and reports the first pair of distinct colors.
Delta3Search find_witness_blind(const Delta3Construction& construction, int i, int bound_bits);

// Recomputes everything in a witness from the family alone.
CheckResult verify_witness(const Delta3Family& family, const Delta3Witness& witness, const Guards& guards = {});

}  // namespace hindman
