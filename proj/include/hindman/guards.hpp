#pragma once

#include <cstdint>

namespace hindman {

// Numeric bounds on exponential work. Every operation that materializes or
// scans something of size 2^n checks the relevant field first.
struct Guards {
  int max_block_bits = 20;          // block(n) materialization and B^n scans
  int max_tree_bits = 20;           // explicit trees / BFS oracle
  int max_sum_terms = 20;           // |H| for finite_sums
  int max_chain_bits = 8;           // 2^n-element chains in the Pi3 witness
  int max_request_bits = 64;        // n for Pi3 requests (modulus 2^n)
  int max_position = 160;           // bit positions scanned by witness finders
  int max_chain_position = 64;      // highest bit of any Pi3 chain element
  int blind_bound_bits = 16;        // blind witness search: values < 2^bits
  std::uint64_t max_search_subsets = 50'000'000;  // search_mono C(N, m)
};

}  // namespace hindman
