#include "timm/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "timm/rng.hpp"

namespace timm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// i -> i+j (mod n) for j = 1..(n-1)/2, expressed for a pair u < v.
bool rotational_edge(int n, int u, int v) {
  int d = v - u;  // 1..n-1
  return d <= (n - 1) / 2;
}

}  // namespace

Tournament random_tournament(int n, std::uint64_t seed) {
  require(n >= 0, "random_tournament: n must be non-negative");
  Rng rng(seed);
  return Tournament::build(n, [&](int, int) { return rng.fair(); });
}

Tournament transitive_tournament(int n) {
  require(n >= 0, "transitive_tournament: n must be non-negative");
  return Tournament::build(n, [](int, int) { return true; });
}

Tournament regular_tournament(int n) {
  require(n >= 1 && n % 2 == 1, "regular_tournament: n must be odd and positive");
  return Tournament::build(n, [n](int u, int v) { return rotational_edge(n, u, v); });
}

Tournament near_regular_tournament(int n, std::uint64_t seed) {
  require(n >= 1 && n % 2 == 1, "near_regular_tournament: n must be odd and positive");
  // adj[u][v] for u < v only; the other direction is implied.
  std::vector<std::vector<char>> upper(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    upper[static_cast<std::size_t>(u)].resize(static_cast<std::size_t>(n), 0);
    for (int v = u + 1; v < n; ++v)
      upper[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
          rotational_edge(n, u, v) ? 1 : 0;
  }
  auto has_edge = [&](int u, int v) {
    return u < v ? upper[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == 1
                 : upper[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] == 0;
  };
  auto flip = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    upper[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ^= 1;
  };
  // Reversing a directed triangle a->b->c->a keeps every out-degree fixed.
  Rng rng(seed);
  long attempts = 20L * n;
  for (long i = 0; i < attempts; ++i) {
    int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (a == b || b == c || a == c) continue;
    if (has_edge(a, b) && has_edge(b, c) && has_edge(c, a)) {
      flip(a, b);
      flip(b, c);
      flip(c, a);
    }
  }
  return Tournament::build(n, [&](int u, int v) { return has_edge(u, v); });
}

Tournament triangle_blowup(int a, int b, int c) {
  require(a >= 0 && b >= 0 && c >= 0, "triangle_blowup: part sizes must be non-negative");
  int n = a + b + c;
  auto part = [a, b](int v) { return v < a ? 0 : (v < a + b ? 1 : 2); };
  return Tournament::build(n, [&](int u, int v) {
    int pu = part(u), pv = part(v);
    if (pu == pv) return true;           // within a part: transitive, u < v
    return (pu + 1) % 3 == pv;           // A -> B -> C -> A
  });
}

Tournament min_outdegree_construction(int k, int n) {
  require(k >= 2, "min_outdegree_construction: k must be at least 2");
  int m = 2 * k - 3;
  require(n >= m, "min_outdegree_construction: n must be at least 2k-3");
  int top = n - m;  // vertices >= top form the bottom block
  return Tournament::build(n, [&](int u, int v) {
    if (u >= top && v >= top) return rotational_edge(m, u - top, v - top);
    return true;  // transitive elsewhere; all cross edges point into the block
  });
}

}  // namespace timm
