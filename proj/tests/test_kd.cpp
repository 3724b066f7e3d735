#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "timm/errors.hpp"
#include "timm/generators.hpp"
#include "timm/kd_immersion.hpp"
#include "timm/verifier.hpp"

using namespace timm;

namespace {

StepState fresh_state(const Tournament& t, std::vector<int> branches) {
  return StepState{1, VertexSet::all(t.size()), std::move(branches), {}, {}, std::nullopt};
}

}  // namespace

TEST_CASE("branch selection meets its degree contract") {
  const auto t = near_regular_tournament(101, 5);
  const auto active = VertexSet::all(101);
  KdTrace trace;
  const auto picked = select_branch_set(t, active, 3, &trace, 1);
  REQUIRE(picked.size() == 3);
  CHECK(trace.violations() == 0);
  for (std::size_t i = 0; i + 1 < picked.size(); ++i) CHECK(picked[i] < picked[i + 1]);
  int lo = 101, hi = 0;
  for (int v : picked) {
    CHECK(t.out_degree_within(v, active) >= 12);
    CHECK(t.in_degree_within(v, active) >= 12);
    lo = std::min(lo, t.out_degree_within(v, active));
    hi = std::max(hi, t.out_degree_within(v, active));
  }
  CHECK(hi - lo <= 6);
}

TEST_CASE("branch selection rejects undersized inputs") {
  const auto t = near_regular_tournament(101, 5);
  VertexSet small(101);
  for (int v = 0; v < 95; ++v) small.insert(v);  // one short of 32k for k = 3
  CHECK_THROWS_AS(select_branch_set(t, small, 3), std::invalid_argument);
  CHECK_THROWS_AS(select_branch_set(t, VertexSet::all(101), 0), std::invalid_argument);
}

TEST_CASE("greedy paths on the directed triangle") {
  const auto t = regular_tournament(3);  // 0 -> 1 -> 2 -> 0
  auto state = fresh_state(t, {0, 1});
  REQUIRE(try_paths(t, state));
  CHECK_FALSE(state.witness.has_value());
  CHECK(state.paths.at({0, 1}) == std::vector<int>{0, 1});
  CHECK(state.paths.at({1, 0}) == std::vector<int>{1, 2, 0});
  CHECK(state.used_edges.size() == 3);
}

TEST_CASE("greedy paths fall back to three edges when two cannot work") {
  // Parts A = {0..3}, B = {4..7}, C = {8..11}. Returning into A needs the
  // full detour through B and C.
  const auto t = triangle_blowup(4, 4, 4);
  auto state = fresh_state(t, {0, 1});
  REQUIRE(try_paths(t, state));
  CHECK(state.paths.at({0, 1}) == std::vector<int>{0, 1});
  CHECK(state.paths.at({1, 0}) == std::vector<int>{1, 4, 8, 0});
}

TEST_CASE("greedy paths report the stuck pair on a transitive tournament") {
  const auto t = transitive_tournament(8);
  auto state = fresh_state(t, {0, 1});
  CHECK_FALSE(try_paths(t, state));
  REQUIRE(state.witness.has_value());
  CHECK(*state.witness == std::pair<int, int>{1, 0});
  // The forward pair was still committed before the failure.
  CHECK(state.paths.count({0, 1}) == 1);
}

TEST_CASE("failure partition carves the active set exactly") {
  const auto t = transitive_tournament(60);
  auto state = fresh_state(t, {28, 29});
  REQUIRE_FALSE(try_paths(t, state));
  REQUIRE(*state.witness == std::pair<int, int>{29, 28});

  KdTrace trace;
  const auto part = partition_failure(t, state, &trace);
  CHECK(trace.violations() == 0);
  CHECK(part.fresh_out.count() == 30);  // 30..59
  CHECK(part.fresh_in.count() == 28);   // 0..27
  for (int v = 30; v < 60; ++v) CHECK(part.fresh_out.contains(v));
  for (int v = 0; v < 28; ++v) CHECK(part.fresh_in.contains(v));
  CHECK(part.residue.empty());
  CHECK(part.blocked.count() == 2);
  CHECK(part.blocked.contains(28));
  CHECK(part.blocked.contains(29));

  // Set identities the descent relies on.
  CHECK(part.descent == (state.active - part.fresh_in));
  CHECK(part.blocked == (state.active - part.fresh_out - part.fresh_in));
  CHECK((part.fresh_out & part.fresh_in).empty());
}

TEST_CASE("partition requires a witness and healthy branch degrees") {
  const auto t = transitive_tournament(60);
  auto clean = fresh_state(t, {28, 29});
  CHECK_THROWS_AS(partition_failure(t, clean), std::invalid_argument);

  // Branch 59 has no out-neighbours at all, so A_i collapses.
  auto starved = fresh_state(t, {0, 59});
  REQUIRE_FALSE(try_paths(t, starved));
  try {
    partition_failure(t, starved);
    FAIL("expected a consistency error");
  } catch (const InternalConsistencyError& e) {
    CHECK(e.inequality() == "|A_i| >= k");
  }
}

TEST_CASE("first descent check splits pass and fail correctly") {
  const auto t = transitive_tournament(60);
  auto state = fresh_state(t, {28, 29});
  REQUIRE_FALSE(try_paths(t, state));
  const auto part = partition_failure(t, state);

  // Bar 0: nothing can sit below it, the descent set moves on whole.
  const auto pass = p1_check(t, part, 1, 2);
  REQUIRE(pass.next_active.has_value());
  CHECK(*pass.next_active == part.descent);
  CHECK(pass.low_degree.empty());

  // Bar 116 dwarfs a 32-vertex descent set; the two quietest vertices of
  // the transitive tail are its last two.
  const auto fail = p1_check(t, part, 59, 2);
  CHECK_FALSE(fail.next_active.has_value());
  CHECK(fail.low_degree == std::vector<int>{59, 58});
}

TEST_CASE("low-degree construction routes through fabricated pools") {
  // 0, 1 are the branches; 2..9 form the in-pool B, 10..17 the out-pool A.
  // Branches beat B, B beats A, A beats the branches; everything needed
  // for v -> b -> a -> v' paths in abundance.
  const int n = 18;
  const auto t = Tournament::build(n, [](int u, int v) {
    const auto zone = [](int x) { return x < 2 ? 0 : x < 10 ? 1 : 2; };
    const int zu = zone(u), zv = zone(v);
    if (zu == zv) return u < v;
    if (zu == 0) return zv == 1;  // branches -> B, A -> branches
    if (zu == 1) return zv == 2;  // B -> A
    return zv == 0;               // A -> branches
  });
  DescentLayer layer{VertexSet(n), VertexSet(n)};
  for (int v = 10; v < 18; ++v) layer.fresh_out.insert(v);
  for (int v = 2; v < 10; ++v) layer.fresh_in.insert(v);

  KdTrace trace;
  const auto im = p2_construct(t, {layer}, {0, 1}, &trace);
  CHECK(trace.low_degree_exit);
  CHECK(im.k == 2);
  REQUIRE(im.paths.size() == 2);
  for (const auto& [pr, path] : im.paths) CHECK(path.size() == 4);
  CHECK_FALSE(verify_immersion(t, im, 3, true).has_value());
}

TEST_CASE("low-degree construction raises when a pool runs dry") {
  const auto t = transitive_tournament(18);
  DescentLayer empty_in{VertexSet(18), VertexSet(18)};
  for (int v = 10; v < 18; ++v) empty_in.fresh_out.insert(v);
  try {
    p2_construct(t, {empty_in}, {0, 1});
    FAIL("expected a consistency error");
  } catch (const InternalConsistencyError& e) {
    CHECK(e.inequality() == "branch out-degree >= k-1 into removed in-pools");
  }
  CHECK_THROWS_AS(p2_construct(t, {}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(p2_construct(t, {empty_in}, {}), std::invalid_argument);
}

TEST_CASE("single branch vertex needs no degree hypothesis") {
  const auto got = find_kd_immersion(transitive_tournament(1), 1);
  REQUIRE(got.status == KdStatus::found);
  CHECK(got.immersion->branches == std::vector<int>{0});
  CHECK(got.immersion->paths.empty());
  CHECK(find_kd_immersion(transitive_tournament(5), 1).status == KdStatus::found);
}

TEST_CASE("empty tournament is infeasible") {
  const auto got = find_kd_immersion(Tournament::build(0, [](int, int) { return true; }), 2);
  CHECK(got.status == KdStatus::infeasible);
  CHECK(got.reason == "empty tournament");
}

TEST_CASE("near-regular tournaments at the degree threshold succeed") {
  for (int k : {2, 3}) {
    const int n = 2 * 59 * k + 1;
    const auto t = near_regular_tournament(n, static_cast<std::uint64_t>(k));
    const auto got = find_kd_immersion(t, k);
    REQUIRE(got.status == KdStatus::found);
    CHECK(got.trace.violations() == 0);
    CHECK_FALSE(verify_immersion(t, *got.immersion, 3, true).has_value());
    CHECK(got.immersion->paths.size() == static_cast<std::size_t>(k * (k - 1)));
  }
}

TEST_CASE("low out-degree input is rejected up front in strict mode") {
  const auto t = min_outdegree_construction(3, 200);
  const auto got = find_kd_immersion(t, 3);
  CHECK(got.status == KdStatus::infeasible);
  CHECK(got.reason.find("below") != std::string::npos);
  CHECK(got.trace.violations() == 1);  // the recorded degree probe
}

TEST_CASE("best effort keeps going and stops honestly") {
  const auto t = min_outdegree_construction(3, 200);
  KdOptions opt;
  opt.best_effort = true;
  const auto got = find_kd_immersion(t, 3, opt);
  // Without the degree hypothesis the run may only end in exhausted here:
  // this construction contains no such immersion at all.
  CHECK(got.status == KdStatus::exhausted);
  CHECK_FALSE(got.reason.empty());
  CHECK(got.trace.steps >= 1);
  CHECK(got.trace.violations() >= 1);
}

TEST_CASE("threshold arithmetic picks 59 as the least workable constant") {
  const auto holds = [](long long c) { return 2 * (c - 13) * (c - 2) >= (c + 13) * (c + 13); };
  for (long long c = 14; c < 59; ++c) CHECK_FALSE(holds(c));
  for (long long c = 59; c <= 100; ++c) CHECK(holds(c));

  CHECK_THROWS_AS(find_kd_immersion(transitive_tournament(4), 2, KdOptions{58, false}),
                  std::invalid_argument);
  // Best effort records the broken guarantee instead of refusing.
  const auto t = near_regular_tournament(233, 9);  // delta+ = 116 = 58k
  const auto got = find_kd_immersion(t, 2, KdOptions{58, true});
  CHECK(got.trace.violations() >= 1);
  if (got.status == KdStatus::found)
    CHECK_FALSE(verify_immersion(t, *got.immersion, 3, true).has_value());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(find_kd_immersion(transitive_tournament(4), 0), std::invalid_argument);
}

TEST_CASE("runs replay deterministically") {
  const auto t = near_regular_tournament(237, 31);
  const auto a = find_kd_immersion(t, 2);
  const auto b = find_kd_immersion(t, 2);
  CHECK(a.status == b.status);
  CHECK(a.trace.summary() == b.trace.summary());
  REQUIRE(a.immersion.has_value());
  CHECK(*a.immersion == *b.immersion);
}

TEST_CASE("trace summary names its counters") {
  const auto got = find_kd_immersion(near_regular_tournament(237, 2), 2);
  const auto text = got.trace.summary();
  CHECK(text.find("steps=") != std::string::npos);
  CHECK(text.find("violations=0") != std::string::npos);
}
