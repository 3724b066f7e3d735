#include "timm/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace timm {

namespace {

void check_ratio(Ratio eps) {
  if (eps.den <= 0 || eps.num <= 0 || eps.num >= eps.den)
    throw std::invalid_argument("ratio must lie strictly between 0 and 1");
}

}  // namespace

long long count_backward_edges(const Tournament& t, const std::vector<int>& perm) {
  long long c = 0;
  for (std::size_t p = 0; p < perm.size(); ++p)
    for (std::size_t q = p + 1; q < perm.size(); ++q)
      if (t.edge(perm[q], perm[p])) ++c;
  return c;
}

Ordering low_backward_ordering(const Tournament& t) {
  int n = t.size();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = t.out_degree(v);

  Ordering ord;
  ord.perm.resize(static_cast<std::size_t>(n));
  std::iota(ord.perm.begin(), ord.perm.end(), 0);
  std::sort(ord.perm.begin(), ord.perm.end(), [&](int a, int b) {
    int da = deg[static_cast<std::size_t>(a)], db = deg[static_cast<std::size_t>(b)];
    return da != db ? da > db : a < b;
  });
  ord.backward_count = count_backward_edges(t, ord.perm);

  // One relocation per improvable position per pass; stop on a clean pass.
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      int v = ord.perm[static_cast<std::size_t>(i)];
      long long best = 0;
      int best_j = i;
      long long d = 0;
      for (int p = i - 1; p >= 0; --p) {  // move v in front of positions p..i-1
        d += t.edge(ord.perm[static_cast<std::size_t>(p)], v) ? 1 : -1;
        if (d < best) {
          best = d;
          best_j = p;
        }
      }
      d = 0;
      for (int p = i + 1; p < n; ++p) {  // move v behind positions i+1..p
        d += t.edge(v, ord.perm[static_cast<std::size_t>(p)]) ? 1 : -1;
        if (d < best) {
          best = d;
          best_j = p;
        }
      }
      if (best < 0) {
        auto it = ord.perm.begin();
        if (best_j < i)
          std::rotate(it + best_j, it + i, it + i + 1);
        else
          std::rotate(it + i, it + i + 1, it + best_j + 1);
        ord.backward_count += best;
        improved = true;
      }
    }
  }
  return ord;
}

CoreResult high_degree_core(const Tournament& t, Ratio eps) {
  check_ratio(eps);
  int n = t.size();
  // target = ceil((1-eps)n), window centred by dropping floor(eps*n)/2 up front.
  long long scaled = eps.num * n;
  int dropped = static_cast<int>(scaled / eps.den);
  int target = n - dropped;
  int front = dropped / 2;

  Ordering ord = low_backward_ordering(t);
  CoreResult res{VertexSet(n), false};
  int kept = 0;
  for (int p = front; p < front + target; ++p) {
    int v = ord.perm[static_cast<std::size_t>(p)];
    // degree >= eps*n/4, cross-multiplied to stay exact
    long long lhs_out = 4LL * t.out_degree(v) * eps.den;
    long long lhs_in = 4LL * t.in_degree(v) * eps.den;
    if (lhs_out >= scaled && lhs_in >= scaled) {
      res.members.insert(v);
      ++kept;
    }
  }
  res.short_of_target = kept < target;
  return res;
}

SimilarDegreeResult similar_degree_set(const Tournament& t, Ratio eps, int bucket_width) {
  check_ratio(eps);
  int n = t.size();
  if (bucket_width < 1 || bucket_width > n)
    throw std::invalid_argument("bucket width must lie in [1, n]");

  CoreResult core = high_degree_core(t, eps);
  int buckets = (n + bucket_width - 1) / bucket_width;
  std::vector<int> size(static_cast<std::size_t>(buckets), 0);
  core.members.for_each(
      [&](int v) { ++size[static_cast<std::size_t>(t.out_degree(v) / bucket_width)]; });

  SimilarDegreeResult res;
  int best = 0;
  for (int b = 0; b < buckets; ++b)
    if (size[static_cast<std::size_t>(b)] > best) {
      best = size[static_cast<std::size_t>(b)];
      res.bucket = b;
    }
  // need best >= (1-eps) * bucket_width, exactly
  if (res.bucket < 0 ||
      static_cast<long long>(best) * eps.den < (eps.den - eps.num) * bucket_width)
    return res;

  VertexSet members(n);
  core.members.for_each([&](int v) {
    if (t.out_degree(v) / bucket_width == res.bucket) members.insert(v);
  });
  res.members = std::move(members);
  return res;
}

}  // namespace timm
