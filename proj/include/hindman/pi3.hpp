#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hindman/approx_families.hpp"
#include "hindman/delta3.hpp"
#include "hindman/tree_coloring.hpp"

namespace hindman {

// Staged priority construction over a monotone family F(i, x, y, s). Copies
// share memo tables.
class Pi3Construction {
 public:
  explicit Pi3Construction(MonotoneFamily family, Guards guards = {});

  const MonotoneFamily& family() const;
  const Guards& guards() const;

  // Least x in B^n with minimal F(i, x, y, s), and that minimum.
  Natural guess_element(int i, int n, int y, int s) const;
  Value guess_bound(int i, int n, int y, int s) const;

  static bool in_domain(int n, int y, int k, int s) { return 0 < n && n < y && y <= k && k <= s; }
  // I(n, y, k, s); nullopt is infinity. DomainError off the domain.
  std::optional<int> stage_index(int n, int y, int k, int s) const;
  // Q_n(y, k, s) in B^y: the guess of the stage index over B^y with
  // parameters (k, s), or 2^y.
  Natural q(int n, int y, int k, int s) const;
  TriRequestFunction q_function(int n) const;

  // R_0(n, w) = potential of w in the Q_n tree mod 2^n; R(n, w) = 2^n + R_0.
  Natural residue(int n, const Natural& w) const;
  Natural request(int n, const Natural& w) const;
  RequestFunction request_function() const;

  int color(const Natural& w) const;
  const TreeColoring& tree() const;

  // I(n) for n = 1..n_max from truth: min(Z(n) \ H(n)); index 0 unused.
  std::vector<std::optional<int>> stable_indices(int n_max) const;
  std::optional<int> stable_index(int n) const;
  // Least k such that stage indices for positions <= n match the limits for
  // this y whenever s is past stage_s_floor.
  int stage_k_floor(int n, int y) const;
  int stage_s_floor(int n, int y, int k) const;
  CheckResult check_stable_indices(int n_max, int samples = 2) const;

 private:
  struct Impl;
  explicit Pi3Construction(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

struct Pi3Chain {
  int i = 0;
  int n = 0;
  int floor = 0;  // Y
  std::vector<Natural> elements;
  int stage = 0;  // s = mu(last element), where the links are checked
};

// x_1 << ... << x_count from truth(i) with lambda(x_1) > max(Y, n) and
// Q_n(mu(x_g), lambda(x_{g+1}), s) = x_g at s = mu(x_count).
// Throws DomainError when a precondition or the position guard fails.
Pi3Chain build_chain(const Pi3Construction& construction, int i, int n, int count, int floor);
CheckResult check_chain(const Pi3Construction& construction, const Pi3Chain& chain);

struct RequestRow {
  Natural w;
  Natural residue;
  Natural request;
};

struct DistinctRequests {
  Pi3Chain chain;
  std::vector<RequestRow> rows;  // h = 1..2^n
};

// Chain of 2^n + 1 elements, w_h = x_h + ... + x_{2^n+1}; residues step by
// one and exhaust B^n. Throws VerificationError if they do not.
DistinctRequests distinct_requests(const Pi3Construction& construction, int i, int n);

struct Pi3Witness {
  int i = 0;
  int n = 0;
  std::vector<Natural> chain;
  std::vector<Natural> sums;
  Natural x, w;
  int color_w = 0;
  int color_with_x = 0;
};

struct Pi3Search {
  std::optional<Pi3Witness> witness;
  std::string reason;
};

Pi3Search find_witness(const Pi3Construction& construction, int i);
CheckResult verify_witness(const MonotoneFamily& family, const Pi3Witness& witness, const Guards& guards = {});

}  // namespace hindman
