#pragma once

#include <string>

#include "holo/types.hpp"

namespace holo {

// Deterministic binary reference generators. Every generated array is n x n
// with entries in {0, 1}.
enum class ReferenceKind { None, Pinhole, Block, Ura };

// pinhole_radius <= 0 selects the default radius max(1, n/32).
ImageGrid generate_reference(ReferenceKind kind, int n, int pinhole_radius = 0);

// Twin-prime coded-aperture core used by the URA reference: an r x s binary
// array (r = s + 2, both prime) whose periodic autocorrelation on the r x s
// torus takes exactly two distinct values. Exposed for the property tests.
ImageGrid ura_core(int r, int s);

// Largest twin-prime pair (s, r = s + 2) with r <= n. Throws ConfigError if
// none fits (n < 5).
void largest_twin_primes(int n, int& r, int& s);

const char* to_string(ReferenceKind kind);
ReferenceKind reference_kind_from_string(const std::string& name);

}  // namespace holo
