#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "timm/generators.hpp"
#include "timm/oracle.hpp"
#include "timm/tournament.hpp"
#include "timm/verifier.hpp"

using namespace timm;

namespace {

Immersion tt_chain(const std::vector<int>& branches) {
  Immersion im;
  im.pattern = PatternKind::transitive_tournament;
  im.k = static_cast<int>(branches.size());
  im.branches = branches;
  for (std::size_t i = 0; i < branches.size(); ++i)
    for (std::size_t j = i + 1; j < branches.size(); ++j)
      im.paths[{branches[i], branches[j]}] = {branches[i], branches[j]};
  return im;
}

// All labeled tournaments on n vertices, one per edge-orientation mask.
template <class F>
void for_all_tournaments(int n, F&& f) {
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
    const auto t = Tournament::build(n, [&](int u, int v) {
      int idx = 0;
      for (int a = 0; a < u; ++a) idx += n - 1 - a;
      idx += v - u - 1;
      return (mask >> idx) & 1u;
    });
    f(t);
  }
}

bool contains(const std::optional<ImmersionViolation>& v, const std::string& needle) {
  return v && v->what.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("direct chain on a transitive tournament verifies") {
  const auto t = transitive_tournament(5);
  const auto im = tt_chain({0, 2, 4});
  CHECK_FALSE(verify_immersion(t, im, 2, true).has_value());
  CHECK_FALSE(verify_immersion(t, im, 1, true).has_value());
}

TEST_CASE("verifier finds each defect") {
  const auto t = transitive_tournament(6);

  auto im = tt_chain({0, 2, 4});
  im.k = 2;
  CHECK(contains(verify_immersion(t, im, 2, true), "branch count"));

  im = tt_chain({0, 2, 2});
  CHECK(contains(verify_immersion(t, im, 2, true), "duplicate branch"));

  im = tt_chain({0, 2, 9});
  CHECK(contains(verify_immersion(t, im, 2, true), "out of range"));

  im = tt_chain({0, 2, 4});
  im.paths.erase({0, 4});
  CHECK(contains(verify_immersion(t, im, 2, true), "missing path"));

  im = tt_chain({0, 2, 4});
  im.paths[{4, 0}] = {4, 5};  // sneak in an unrequested pair
  CHECK(contains(verify_immersion(t, im, 2, true), "does not require"));

  im = tt_chain({0, 2, 4});
  im.paths[{0, 2}] = {0, 1, 2};  // reroute everything so no edge is shared
  im.paths[{2, 4}] = {2, 3, 4};
  im.paths[{0, 4}] = {0, 2, 4};  // 2 edges, fine at limit 2, long at 1
  CHECK_FALSE(verify_immersion(t, im, 2, false).has_value());
  CHECK(contains(verify_immersion(t, im, 1, false), "limit 1"));
  // vertex 2 is a branch vertex sitting inside the (0, 4) path
  CHECK(contains(verify_immersion(t, im, 2, true), "internal"));

  im = tt_chain({0, 2, 4});
  im.paths[{0, 4}] = {0, 5, 4};  // 5 -> 4 goes against the orientation
  CHECK(contains(verify_immersion(t, im, 2, true), "non-edge"));

  im = tt_chain({0, 2, 4});
  im.paths[{0, 4}] = {0, 4, 4};
  // weak mode, else the branch-internal check trips first on vertex 4
  CHECK(contains(verify_immersion(t, im, 2, false), "repeats"));

  im = tt_chain({0, 2, 4});
  im.paths[{0, 2}] = {0, 1, 2};
  im.paths[{0, 4}] = {0, 1, 4};  // both use edge (0, 1)
  CHECK(contains(verify_immersion(t, im, 3, true), "two paths"));
}

TEST_CASE("degree screen matches the patterns") {
  // Transitive pattern needs one vertex of out-degree >= k-1; complete
  // pattern needs k vertices good in both directions.
  const auto t = regular_tournament(5);  // all degrees 2
  CHECK(branch_degree_screen(t, PatternKind::transitive_tournament, 3));
  CHECK_FALSE(branch_degree_screen(t, PatternKind::transitive_tournament, 4));
  CHECK(branch_degree_screen(t, PatternKind::complete_digraph, 3));
  CHECK_FALSE(branch_degree_screen(t, PatternKind::complete_digraph, 4));
}

TEST_CASE("oracle exhausts the directed triangle for the 3-chain") {
  const auto t = regular_tournament(3);
  const auto got = oracle_find_immersion(t, PatternKind::transitive_tournament, 3, 2);
  CHECK(got.status == OracleStatus::exhausted);
  CHECK_FALSE(got.immersion.has_value());
}

TEST_CASE("all 64 labeled 4-tournaments carry the 3-chain") {
  int found = 0;
  for_all_tournaments(4, [&](const Tournament& t) {
    const auto got = oracle_find_immersion(t, PatternKind::transitive_tournament, 3, 2);
    REQUIRE(got.status == OracleStatus::found);
    REQUIRE_FALSE(verify_immersion(t, *got.immersion, 2, true).has_value());
    ++found;
  });
  CHECK(found == 64);
}

TEST_CASE("oracle certificates verify and replay identically") {
  const auto t = random_tournament(8, 123);
  const auto a = oracle_find_immersion(t, PatternKind::complete_digraph, 2, 3);
  const auto b = oracle_find_immersion(t, PatternKind::complete_digraph, 2, 3);
  REQUIRE(a.status == OracleStatus::found);
  CHECK(a.nodes_used == b.nodes_used);
  CHECK(*a.immersion == *b.immersion);
  CHECK_FALSE(verify_immersion(t, *a.immersion, 3, true).has_value());
}

TEST_CASE("small f values are exact") {
  const auto f2 = oracle_f_bound(2, 4);
  REQUIRE(f2.value.has_value());
  CHECK(*f2.value == 2);
  CHECK(f2.last_counterexample_n == 1);

  const auto f3 = oracle_f_bound(3, 4);
  REQUIRE(f3.value.has_value());
  CHECK(*f3.value == 4);
  CHECK(f3.last_counterexample_n == 3);
  REQUIRE(f3.counterexample.has_value());
  // The surviving 3-vertex counterexample is the directed triangle.
  CHECK(f3.counterexample->size() == 3);
  CHECK(oracle_find_immersion(*f3.counterexample, PatternKind::transitive_tournament, 3, 2)
            .status == OracleStatus::exhausted);
}

TEST_CASE("the regular 5-tournament pushes f(4) past 5") {
  const auto t = regular_tournament(5);
  CHECK(oracle_find_immersion(t, PatternKind::transitive_tournament, 4, 2).status ==
        OracleStatus::exhausted);
  const auto f4 = oracle_f_bound(4, 5);
  CHECK_FALSE(f4.value.has_value());
  CHECK(f4.last_counterexample_n == 5);
}

TEST_CASE("plain immersions relax the strong ones") {
  OracleOptions plain;
  plain.strong = false;
  const auto f3 = oracle_f_bound(3, 4, plain);
  REQUIRE(f3.value.has_value());
  CHECK(*f3.value == 4);
}

TEST_CASE("screen soundness across all 5-tournaments") {
  // Whenever the screen rules a pattern out, the oracle must exhaust.
  for (int k = 3; k <= 4; ++k) {
    int screened = 0;
    for_all_tournaments(5, [&](const Tournament& t) {
      for (PatternKind pattern :
           {PatternKind::transitive_tournament, PatternKind::complete_digraph}) {
        if (branch_degree_screen(t, pattern, k)) continue;
        ++screened;
        CHECK(oracle_find_immersion(t, pattern, k, 3).status == OracleStatus::exhausted);
      }
    });
    if (k == 4) CHECK(screened > 0);
  }
}

TEST_CASE("a starved budget is reported as unknown, not absence") {
  const auto t = triangle_blowup(4, 4, 4);
  OracleOptions tiny;
  tiny.node_budget = 1;
  const auto got = oracle_find_immersion(t, PatternKind::complete_digraph, 4, 2, tiny);
  CHECK(got.status == OracleStatus::budget_exceeded);
  CHECK(got.nodes_used >= 1);

  OracleOptions starved;
  starved.node_budget = 2;
  const auto fb = oracle_f_bound(4, 4, starved);
  CHECK(fb.budget_exhausted);
  CHECK_FALSE(fb.value.has_value());
}

TEST_CASE("blown-up triangle needs three edges for the complete pattern") {
  const auto t = triangle_blowup(4, 4, 4);
  OracleOptions opt;
  opt.node_budget = 100'000'000;
  CHECK(oracle_find_immersion(t, PatternKind::complete_digraph, 4, 2, opt).status ==
        OracleStatus::exhausted);
  const auto got = oracle_find_immersion(t, PatternKind::complete_digraph, 4, 3, opt);
  REQUIRE(got.status == OracleStatus::found);
  CHECK_FALSE(verify_immersion(t, *got.immersion, 3, true).has_value());
}

TEST_CASE("oracle rejects bad parameters") {
  const auto t = transitive_tournament(4);
  CHECK_THROWS_AS(oracle_find_immersion(t, PatternKind::transitive_tournament, 0, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_find_immersion(t, PatternKind::transitive_tournament, 2, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_f_bound(2, 7), std::invalid_argument);  // 2^21 is out of reach
  CHECK_THROWS_AS(oracle_f_bound(0, 4), std::invalid_argument);
}
