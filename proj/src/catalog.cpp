#include "hindman/catalog.hpp"

namespace hindman {

SetDescriptor odd_powers() { return SetDescriptor::scaled_powers({1}, {2, 1, 0, std::nullopt}); }
SetDescriptor even_powers() { return SetDescriptor::scaled_powers({1}, {2, 0, 0, std::nullopt}); }
SetDescriptor powers_and_triples() { return SetDescriptor::scaled_powers({1, 3}, {}); }
SetDescriptor two_and_eight() { return SetDescriptor::list(NumberSet{2, 8}); }

Delta3Family standard_delta3_catalog() {
  return Delta3Family({
      instant_entry(odd_powers(), "odd powers"),
      instant_entry(even_powers(), "even powers"),
      instant_entry(powers_and_triples(), "powers and triples"),
      instant_entry(two_and_eight(), "{2, 8}"),
      delayed_entry(odd_powers(), {5, 0, 0}, "odd powers, delay 5"),
      delayed_entry(even_powers(), {2, 1, 0}, "even powers, delay 2 + k"),
  });
}

MonotoneFamily standard_pi3_catalog() {
  return MonotoneFamily({
      monotone_entry(odd_powers(), {0, 0, 1}, "odd powers"),
      monotone_entry(even_powers(), {2, 1, 1}, "even powers, ceiling 2 + y"),
      monotone_entry(powers_and_triples(), {0, 0, 1}, "powers and triples"),
      monotone_entry(two_and_eight(), {0, 0, 1}, "{2, 8}"),
  });
}

}  // namespace hindman
