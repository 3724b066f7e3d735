#pragma once

#include <cstdint>

#include "timm/tournament.hpp"

namespace timm {

// Each unordered pair oriented by an independent fair coin.
Tournament random_tournament(int n, std::uint64_t seed);

// Edge u -> v exactly when u < v.
Tournament transitive_tournament(int n);

// Rotational tournament on odd n: i -> i+j (mod n) for j = 1..(n-1)/2.
// Every in- and out-degree equals (n-1)/2. Throws std::invalid_argument
// for even or non-positive n.
Tournament regular_tournament(int n);

// Rotational tournament shuffled by seeded reversals of directed
// triangles; each reversal preserves all degrees, so the result stays
// regular. n must be odd and positive.
Tournament near_regular_tournament(int n, std::uint64_t seed);

// Blow-up of the directed triangle with parts A, B, C of sizes a, b, c
// (vertex ids in that order). Within parts transitive; between parts all
// edges A -> B, B -> C, C -> A.
Tournament triangle_blowup(int a, int b, int c);

// Transitive tournament on n with the bottom 2k-3 vertices (the ones of
// smallest out-degree) re-oriented as a rotational tournament among
// themselves. No edge leaves the bottom block, so the minimum out-degree
// is exactly k-2. Requires k >= 2 and n >= 2k-3.
Tournament min_outdegree_construction(int k, int n);

}  // namespace timm
