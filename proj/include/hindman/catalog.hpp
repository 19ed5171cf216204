#pragma once

#include <string>
#include <vector>

#include "hindman/approx_families.hpp"

namespace hindman {

// {2^e : e odd}, {2^e : e even}, {2^e} u {3 * 2^e}, {2, 8}.
SetDescriptor odd_powers();
SetDescriptor even_powers();
SetDescriptor powers_and_triples();
SetDescriptor two_and_eight();

// 0 odd powers, 1 even powers, 2 powers and triples, 3 {2, 8} (all instant),
// 4 odd powers with delay 5, 5 even powers with delay 2 + k.
Delta3Family standard_delta3_catalog();

// 0 odd powers (ceiling 0), 1 even powers (ceiling 2 + y), 2 powers and
// triples, 3 {2, 8}; non-members ramp with slope 1.
MonotoneFamily standard_pi3_catalog();

}  // namespace hindman
