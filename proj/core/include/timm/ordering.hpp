#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "timm/tournament.hpp"
#include "timm/vertex_set.hpp"

namespace timm {

// Exact rational in (0, 1); comparisons cross-multiply, no floating point.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 2;
};

struct Ordering {
  std::vector<int> perm;  // position -> vertex
  long long backward_count = 0;
};

long long count_backward_edges(const Tournament& t, const std::vector<int>& perm);

// Ordering locally minimal under relocating any single vertex to any other
// position. Every improving move strictly decreases the backward count, so
// the search terminates; the result satisfies d-(x_i) >= floor(i/2) and
// d+(x_i) >= floor((n+1-i)/2) for 1-based positions i.
Ordering low_backward_ordering(const Tournament& t);

struct CoreResult {
  VertexSet members;
  // Set when fewer than ceil((1-eps)n) middle vertices clear the exact
  // degree threshold eps*n/4, as happens when the window reaches the
  // degree extremes of very small inputs.
  bool short_of_target = false;
};

// The middle ceil((1-eps)n) vertices of low_backward_ordering, filtered to
// those with both out- and in-degree >= eps*n/4 in t. The threshold is the
// exact rational; infeasibly small inputs flag rather than round down.
CoreResult high_degree_core(const Tournament& t, Ratio eps);

struct SimilarDegreeResult {
  std::optional<VertexSet> members;  // nullopt: no bucket reached (1-eps)t
  int bucket = -1;                   // winning out-degree interval [bucket*t, (bucket+1)*t)
};

// Largest out-degree bucket of the high-degree core, buckets being the
// intervals of length t partitioning [0, n); ties pick the lowest bucket.
// Members pairwise differ by less than t in out-degree and keep the core's
// eps*n/4 degree guarantee. Fails explicitly when the winning bucket has
// fewer than (1-eps)t members. Requires 1 <= t <= n.
SimilarDegreeResult similar_degree_set(const Tournament& t, Ratio eps, int bucket_width);

}  // namespace timm
