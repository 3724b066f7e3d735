#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "timm/generators.hpp"
#include "timm/ordering.hpp"

using namespace timm;

namespace {

bool is_permutation_of_range(const std::vector<int>& perm, int n) {
  std::vector<int> s = perm;
  std::sort(s.begin(), s.end());
  std::vector<int> want(static_cast<std::size_t>(n));
  std::iota(want.begin(), want.end(), 0);
  return s == want;
}

// True when relocating any single vertex to any other position fails to
// strictly decrease the backward count.
bool locally_minimal(const Tournament& t, const std::vector<int>& perm) {
  const long long base = count_backward_edges(t, perm);
  const int n = static_cast<int>(perm.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<int> moved = perm;
      const int v = moved[static_cast<std::size_t>(i)];
      moved.erase(moved.begin() + i);
      moved.insert(moved.begin() + j, v);
      if (count_backward_edges(t, moved) < base) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("backward edge counting") {
  const auto t = transitive_tournament(6);
  std::vector<int> fwd{0, 1, 2, 3, 4, 5};
  std::vector<int> rev{5, 4, 3, 2, 1, 0};
  CHECK(count_backward_edges(t, fwd) == 0);
  CHECK(count_backward_edges(t, rev) == 15);
  std::vector<int> swapped{1, 0, 2, 3, 4, 5};
  CHECK(count_backward_edges(t, swapped) == 1);
}

TEST_CASE("low backward ordering is a locally minimal permutation") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto t = random_tournament(15, seed);
    const auto ord = low_backward_ordering(t);
    REQUIRE(is_permutation_of_range(ord.perm, 15));
    CHECK(ord.backward_count == count_backward_edges(t, ord.perm));
    CHECK(locally_minimal(t, ord.perm));
  }
}

TEST_CASE("positions certify global degrees") {
  // Position i (1-based) forces in-degree >= floor(i/2) and out-degree
  // >= floor((n+1-i)/2): moving the vertex to either end cannot pay off.
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    for (int n : {10, 33, 64}) {
      const auto t = random_tournament(n, seed);
      const auto ord = low_backward_ordering(t);
      for (int i = 1; i <= n; ++i) {
        const int v = ord.perm[static_cast<std::size_t>(i - 1)];
        CHECK(t.in_degree(v) >= i / 2);
        CHECK(t.out_degree(v) >= (n + 1 - i) / 2);
      }
    }
  }
}

TEST_CASE("transitive input orders itself") {
  const auto t = transitive_tournament(9);
  const auto ord = low_backward_ordering(t);
  CHECK(ord.backward_count == 0);
  CHECK(ord.perm == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("high degree core keeps the middle window") {
  const auto t = transitive_tournament(16);
  const auto core = high_degree_core(t, Ratio{1, 2});
  CHECK_FALSE(core.short_of_target);
  CHECK(core.members.count() == 8);
  for (int v = 4; v <= 11; ++v) CHECK(core.members.contains(v));
}

TEST_CASE("core members clear the exact degree threshold") {
  for (std::uint64_t seed : {11u, 12u}) {
    const auto t = random_tournament(40, seed);
    for (Ratio eps : {Ratio{1, 2}, Ratio{1, 4}, Ratio{3, 4}}) {
      const auto core = high_degree_core(t, eps);
      core.members.for_each([&](int v) {
        CHECK(4LL * t.out_degree(v) * eps.den >= eps.num * 40);
        CHECK(4LL * t.in_degree(v) * eps.den >= eps.num * 40);
      });
    }
  }
}

TEST_CASE("degree extremes in the window flag the core as short") {
  const auto t = transitive_tournament(3);
  const auto core = high_degree_core(t, Ratio{1, 2});
  CHECK(core.short_of_target);
  CHECK(core.members.count() == 1);
  CHECK(core.members.contains(1));
}

TEST_CASE("ratio validation") {
  const auto t = transitive_tournament(5);
  CHECK_THROWS_AS(high_degree_core(t, Ratio{0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(high_degree_core(t, Ratio{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(high_degree_core(t, Ratio{1, 0}), std::invalid_argument);
}

TEST_CASE("similar degree set on a regular tournament keeps the whole core") {
  const auto t = regular_tournament(15);
  const auto got = similar_degree_set(t, Ratio{1, 2}, 4);
  REQUIRE(got.members.has_value());
  CHECK(got.bucket == 7 / 4);
  const auto core = high_degree_core(t, Ratio{1, 2});
  CHECK(*got.members == core.members);
}

TEST_CASE("similar degree members differ by less than the width") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto t = random_tournament(48, seed);
    const auto got = similar_degree_set(t, Ratio{1, 2}, 6);
    if (!got.members) continue;
    std::vector<int> degs;
    got.members->for_each([&](int v) { degs.push_back(t.out_degree(v)); });
    const auto [lo, hi] = std::minmax_element(degs.begin(), degs.end());
    CHECK(*hi - *lo < 6);
    // All in the reported width-6 interval.
    for (int d : degs) CHECK(d / 6 == got.bucket);
  }
}

TEST_CASE("similar degree set reports an infeasible bucket") {
  // Core of transitive(3) is a single vertex; a width-3 bucket needs
  // (1 - 1/2) * 3 = 1.5 members.
  const auto got = similar_degree_set(transitive_tournament(3), Ratio{1, 2}, 3);
  CHECK_FALSE(got.members.has_value());
  CHECK(got.bucket == 0);
}

TEST_CASE("bucket width bounds") {
  const auto t = transitive_tournament(5);
  CHECK_THROWS_AS(similar_degree_set(t, Ratio{1, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(similar_degree_set(t, Ratio{1, 2}, 6), std::invalid_argument);
}
