#include "hindman/apartness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hindman/errors.hpp"
#include "hindman/tree_coloring.hpp"

namespace hindman {

int mu_parity(const Dyadic& x) { return x.mu() % 2; }
int lambda_parity(const Dyadic& x) { return x.lambda() % 2; }

std::string ProductColor::str() const {
  std::string out = "(";
  for (std::size_t j = 0; j < components.size(); ++j) out += (j ? "," : "") + std::to_string(components[j]);
  return out + ")";
}

ProductColor weak_apartness_killer(const Dyadic& x) { return {{mu_parity(x), lambda_parity(x)}}; }

ExhaustiveCount check_equal_mu_pairs(int bits) {
  ExhaustiveCount out;
  for (int m = 0; m < bits; ++m) {
    const std::uint64_t lo = std::uint64_t{1} << m, hi = lo << 1;
    for (std::uint64_t a = lo; a < hi; ++a) {
      const int pa = mu_parity(Dyadic(a));
      for (std::uint64_t b = a + 1; b < hi; ++b) {
        ++out.cases;
        if (mu_parity(Dyadic(a + b)) == pa) {
          if (out.exceptions++ == 0) out.first_exception = {Natural(a), Natural(b)};
        }
      }
    }
  }
  return out;
}

ExhaustiveCount check_equal_lambda_triples(int bits) {
  ExhaustiveCount out;
  for (int l = 0; l < bits; ++l) {
    // Vertices: odd multiples of 2^l below 2^bits.
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = std::uint64_t{1} << l; x < (std::uint64_t{1} << bits); x += std::uint64_t{2} << l) {
      xs.push_back(x);
    }
    const std::size_t v = xs.size();
    if (v < 3) continue;
    out.cases += static_cast<std::uint64_t>(v) * (v - 1) * (v - 2) / 6;
    const std::size_t words = (v + 63) / 64;
    std::vector<std::uint64_t> bad(v * words, 0);
    const int parity = l % 2;
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = a + 1; b < v; ++b) {
        if (lambda_parity(Dyadic(xs[a] + xs[b])) == parity) {
          bad[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
          bad[b * words + a / 64] |= std::uint64_t{1} << (a % 64);
        }
      }
    }
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = a + 1; b < v; ++b) {
        if (!(bad[a * words + b / 64] >> (b % 64) & 1)) continue;
        // Common failing neighbours c > b.
        for (std::size_t w = b / 64; w < words; ++w) {
          std::uint64_t common = bad[a * words + w] & bad[b * words + w];
          if (w == b / 64) common &= (b % 64 == 63) ? 0 : ~std::uint64_t{0} << (b % 64 + 1);
          if (!common) continue;
          if (out.exceptions == 0) {
            out.first_exception = {Natural(xs[a]), Natural(xs[b]), Natural(xs[w * 64 + __builtin_ctzll(common)])};
          }
          out.exceptions += static_cast<std::uint64_t>(__builtin_popcountll(common));
        }
      }
    }
  }
  return out;
}

Coloring::Coloring(std::string name, std::vector<int> palette, Eval eval)
    : name_(std::move(name)), palette_(std::move(palette)), eval_(std::move(eval)) {}

Coloring Coloring::scalar(std::string name, int palette, std::function<int(const Natural&)> eval) {
  return Coloring(std::move(name), {palette},
                  [f = std::move(eval)](const Natural& x) { return ProductColor{{f(x)}}; });
}

ProductColor Coloring::operator()(const Natural& x) const {
  if (x < 1) throw DomainError("colorings are defined on positive integers");
  ProductColor c = eval_(x);
  if (c.components.size() != palette_.size()) {
    throw std::logic_error(name_ + " returned " + std::to_string(c.components.size()) + " components, expected " +
                           std::to_string(palette_.size()));
  }
  return c;
}

std::uint64_t Coloring::color_count() const {
  std::uint64_t n = 1;
  for (int p : palette_) n *= static_cast<std::uint64_t>(p);
  return n;
}

Coloring weak_apartness_coloring() {
  return Coloring("c0", {2, 2}, [](const Natural& x) { return weak_apartness_killer(Dyadic(x)); });
}

Coloring popcount_color() {
  return Coloring::scalar("popcount", 2, [](const Natural& x) { return popcount_coloring(Dyadic(x)); });
}

Coloring product(const std::vector<Coloring>& parts) {
  std::string name;
  std::vector<int> palette;
  for (const Coloring& c : parts) {
    name += (name.empty() ? "" : " x ") + c.name();
    palette.insert(palette.end(), c.palette().begin(), c.palette().end());
  }
  return Coloring(name, palette, [parts](const Natural& x) {
    ProductColor out;
    for (const Coloring& c : parts) {
      ProductColor part = c(x);
      out.components.insert(out.components.end(), part.components.begin(), part.components.end());
    }
    return out;
  });
}

bool is_monochromatic(const Coloring& coloring, const NumberSet& h, std::optional<int> max_terms,
                      const Guards& guards) {
  NumberSet sums = finite_sums(h, max_terms, guards);
  if (sums.empty()) return true;
  const ProductColor first = coloring(sums.front());
  return std::all_of(sums.begin(), sums.end(), [&](const Natural& s) { return coloring(s) == first; });
}

ApartExtractor::ApartExtractor(Stream stream, ExtractionPolicy policy, Guards guards)
    : stream_(std::move(stream)), policy_(policy), guards_(guards) {}

Natural ApartExtractor::at(std::size_t index) {
  Natural v = stream_(index);
  if (v < 1) throw DomainError("stream values must be positive");
  // Monotonicity is checked on the first read of each index.
  if (last_value_ && index == last_index_ + 1 && v <= *last_value_) {
    throw DomainError("stream is not strictly increasing at index " + std::to_string(index));
  }
  if (!last_value_ || index == last_index_ + 1) {
    last_value_ = v;
    last_index_ = index;
  }
  return v;
}

ExtractionCertificate ApartExtractor::next() {
  ExtractionCertificate cert;
  if (!last_output_) {
    cert.indices = {position_};
    cert.values = {at(position_)};
    cert.output = cert.values.front();
    ++position_;
    last_output_ = cert.output;
    return cert;
  }
  const int bits = high_bit(*last_output_) + 1;
  const Natural mask = pow2(bits) - 1;
  std::size_t u = 0, t = 0;
  std::vector<Natural> window;
  if (policy_ == ExtractionPolicy::earliest_end) {
    std::map<Natural, std::size_t> first_seen{{Natural(0), 0}};
    Natural prefix = 0;
    for (std::size_t j = 1;; ++j) {
      window.push_back(at(position_ + j - 1));
      prefix += window.back();
      auto [it, fresh] = first_seen.emplace(prefix & mask, j);
      if (!fresh) {
        u = it->second;
        t = j;
        break;
      }
    }
  } else {
    if (bits > guards_.max_block_bits) {
      throw GuardError("leftmost-start extraction window 2^" + std::to_string(bits) + " exceeds max_block_bits=" +
                       std::to_string(guards_.max_block_bits));
    }
    const std::size_t m = std::size_t{1} << bits;
    std::vector<Natural> residues{0};
    Natural prefix = 0;
    for (std::size_t j = 0; j < m; ++j) {
      window.push_back(at(position_ + j));
      prefix += window.back();
      residues.push_back(prefix & mask);
    }
    // Earliest later index with the same residue, scanning right to left.
    std::map<Natural, std::size_t> later;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t j = residues.size(); j-- > 0;) {
      auto it = later.find(residues[j]);
      if (it != later.end()) best = std::make_pair(j, it->second);
      later[residues[j]] = j;
    }
    if (!best) throw std::logic_error("pigeonhole window without a repeated residue");
    std::tie(u, t) = *best;
  }
  for (std::size_t j = u; j < t; ++j) {
    cert.indices.push_back(position_ + j);
    cert.values.push_back(window[j]);
    cert.output += window[j];
  }
  position_ += t;
  last_output_ = cert.output;
  return cert;
}

std::vector<ExtractionCertificate> ApartExtractor::take(std::size_t count) {
  std::vector<ExtractionCertificate> out;
  while (out.size() < count) out.push_back(next());
  return out;
}

CheckResult verify_extraction(const std::vector<ExtractionCertificate>& certificates,
                              const ApartExtractor::Stream& stream, std::size_t fs_outputs, const Guards& guards) {
  CheckResult result;
  auto fail = [&](std::string m) { result.failures.push_back(std::move(m)); };
  std::optional<std::size_t> previous_index;
  std::vector<Natural> outputs;
  for (std::size_t b = 0; b < certificates.size(); ++b) {
    const auto& c = certificates[b];
    const std::string tag = "b_" + std::to_string(b + 1);
    if (c.indices.empty() || c.indices.size() != c.values.size()) {
      fail(tag + ": empty or malformed block");
      continue;
    }
    Natural sum = 0;
    for (std::size_t j = 0; j < c.indices.size(); ++j) {
      if (previous_index && c.indices[j] <= *previous_index) fail(tag + ": blocks overlap or are out of order");
      previous_index = c.indices[j];
      if (stream(c.indices[j]) != c.values[j]) fail(tag + ": value at index " + std::to_string(c.indices[j]));
      sum += c.values[j];
    }
    if (sum != c.output) fail(tag + ": output is not the block sum");
    outputs.push_back(c.output);
  }
  if (!result.ok()) return result;
  for (std::size_t b = 0; b + 1 < outputs.size(); ++b) {
    if (!apart(Dyadic(outputs[b]), Dyadic(outputs[b + 1]))) {
      fail("b_" + std::to_string(b + 1) + " << b_" + std::to_string(b + 2) + " fails");
    }
  }
  auto apartness = has_apartness(NumberSet(outputs));
  if (!apartness) fail("outputs do not have apartness");

  // FS of the first outputs: each subset sum is the sum over the union of its
  // blocks, and a subset-sum table over the consumed prefix agrees.
  const std::size_t m = std::min(fs_outputs, certificates.size());
  if (m == 0) return result;
  if (static_cast<int>(m) > guards.max_sum_terms) throw GuardError("too many outputs for the FS check");
  const std::size_t prefix_end = certificates[m - 1].indices.back() + 1;
  std::vector<Natural> prefix;
  Natural total = 0;
  for (std::size_t j = 0; j < prefix_end; ++j) {
    prefix.push_back(stream(j));
    total += prefix.back();
  }
  if (total > Natural(1) << 26) throw GuardError("subset-sum table over the consumed prefix is too large");
  const std::size_t cap = total.convert_to<std::size_t>();
  std::vector<char> reachable(cap + 1, 0);
  reachable[0] = 1;
  for (const Natural& a : prefix) {
    const std::size_t v = a.convert_to<std::size_t>();
    for (std::size_t s = cap; s >= v; --s) {
      if (reachable[s - v]) reachable[s] = 1;
      if (s == v) break;
    }
  }
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    Natural fs = 0, from_blocks = 0;
    std::set<std::size_t> used;
    for (std::size_t b = 0; b < m; ++b) {
      if (!(mask >> b & 1)) continue;
      fs += certificates[b].output;
      for (std::size_t j = 0; j < certificates[b].indices.size(); ++j) {
        if (!used.insert(certificates[b].indices[j]).second) fail("certificate blocks share an index");
        from_blocks += prefix[certificates[b].indices[j]];
      }
    }
    if (fs != from_blocks) fail("FS value " + fs.str() + " differs from its block union");
    if (!reachable[fs.convert_to<std::size_t>()]) fail("FS value " + fs.str() + " is not a subset sum of the prefix");
  }
  return result;
}

}  // namespace hindman
