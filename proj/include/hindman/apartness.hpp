#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hindman/check.hpp"
#include "hindman/dyadic.hpp"
#include "hindman/guards.hpp"

namespace hindman {

int mu_parity(const Dyadic& x);
int lambda_parity(const Dyadic& x);

struct ProductColor {
  std::vector<int> components;

  std::string str() const;
  friend auto operator<=>(const ProductColor&, const ProductColor&) = default;
};

// (mu(x) mod 2, lambda(x) mod 2).
ProductColor weak_apartness_killer(const Dyadic& x);

struct ExhaustiveCount {
  std::uint64_t cases = 0;
  std::uint64_t exceptions = 0;
  std::vector<Natural> first_exception;
};

// All x1 < x2 < 2^bits with mu(x1) = mu(x2): mu_parity(x1) != mu_parity(x1 + x2).
ExhaustiveCount check_equal_mu_pairs(int bits);
// All x1 < x2 < x3 < 2^bits with one lambda: some pair sum has the other
// lambda parity. A triple fails iff all three of its pairs fail, so failures
// are counted as triangles in the graph of failing pairs.
ExhaustiveCount check_equal_lambda_triples(int bits);

// A finite coloring of the positive integers, possibly a product.
class Coloring {
 public:
  using Eval = std::function<ProductColor(const Natural&)>;

  Coloring(std::string name, std::vector<int> palette, Eval eval);
  static Coloring scalar(std::string name, int palette, std::function<int(const Natural&)> eval);

  ProductColor operator()(const Natural& x) const;
  const std::string& name() const { return name_; }
  const std::vector<int>& palette() const { return palette_; }
  std::size_t arity() const { return palette_.size(); }
  std::uint64_t color_count() const;

 private:
  std::string name_;
  std::vector<int> palette_;
  Eval eval_;
};

Coloring weak_apartness_coloring();
Coloring popcount_color();
// Components are flattened: product({c, c0}) has arity 1 + 2.
Coloring product(const std::vector<Coloring>& parts);

// FS^{<=k}(h) (k empty: all sums) gets one color. Recomputes via finite_sums.
bool is_monochromatic(const Coloring& coloring, const NumberSet& h, std::optional<int> max_terms,
                      const Guards& guards = {});

struct ExtractionCertificate {
  Natural output;
  std::vector<std::size_t> indices;  // positions in the input stream, increasing
  std::vector<Natural> values;
};

enum class ExtractionPolicy {
  // Scan prefix sums after the consumed point and stop at the first repeated
  // residue: the block that ends earliest.
  earliest_end,
  // Among all blocks inside the pigeonhole window, the one starting first
  // (then ending first). Needs the whole window; guarded by max_block_bits.
  leftmost_start,
};

// Turns an increasing stream a_0 < a_1 < ... into b_1 << b_2 << ... with each
// b a sum of a consecutive block of the stream, blocks disjoint and in order.
class ApartExtractor {
 public:
  using Stream = std::function<Natural(std::size_t)>;

  explicit ApartExtractor(Stream stream, ExtractionPolicy policy = ExtractionPolicy::earliest_end,
                          Guards guards = {});

  ExtractionCertificate next();
  std::vector<ExtractionCertificate> take(std::size_t count);
  // Stream positions read so far (all positions below this index).
  std::size_t consumed() const { return position_; }

 private:
  Natural at(std::size_t index);

  Stream stream_;
  ExtractionPolicy policy_;
  Guards guards_;
  std::size_t position_ = 0;
  std::optional<Natural> last_output_;
  std::optional<Natural> last_value_;
  std::size_t last_index_ = 0;
};

// Block sums, disjointness, stream agreement and apartness for every
// certificate; FS of the first fs_outputs outputs inside FS of the consumed
// prefix, both by the union-of-blocks certificate and by a subset-sum table.
CheckResult verify_extraction(const std::vector<ExtractionCertificate>& certificates,
                              const ApartExtractor::Stream& stream, std::size_t fs_outputs = 4,
                              const Guards& guards = {});

}  // namespace hindman
