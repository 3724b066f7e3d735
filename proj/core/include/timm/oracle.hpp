#pragma once

#include <cstdint>
#include <optional>

#include "timm/immersion.hpp"
#include "timm/tournament.hpp"

namespace timm {

// Necessary-condition screen. A branch vertex sourcing d edge-disjoint
// paths needs out-degree >= d, so the transitive pattern needs some vertex
// of out-degree >= k-1 and the complete pattern needs k vertices with both
// degrees >= k-1. Infeasible here implies the oracle must exhaust to None.
bool branch_degree_screen(const Tournament& t, PatternKind pattern, int k);

enum class OracleStatus { found, exhausted, budget_exceeded };

struct OracleOptions {
  std::uint64_t node_budget = 10'000'000;  // search nodes before giving up
  bool strong = true;                      // forbid branch vertices inside paths
};

struct OracleResult {
  OracleStatus status = OracleStatus::exhausted;
  std::optional<Immersion> immersion;  // set when status == found
  std::uint64_t nodes_used = 0;
};

// Exhaustive backtracking over branch tuples and path systems: branch sets
// ascending lexicographic (all orders of each set for the transitive
// pattern), per pair paths by increasing length with ascending internal
// vertices. "exhausted" is a proof of nonexistence; "budget_exceeded" is
// not. Deterministic for fixed inputs.
OracleResult oracle_find_immersion(const Tournament& t, PatternKind pattern, int k,
                                   int max_len, const OracleOptions& opt = {});

struct FBoundResult {
  int k = 0;
  int n_max = 0;
  // Least n such that every tournament on n vertices contains a strong (or
  // plain, per options) 1-immersion of the transitive pattern on k
  // vertices. Unset when a counterexample still exists at n_max.
  std::optional<int> value;
  int last_counterexample_n = 0;
  std::optional<Tournament> counterexample;
  bool budget_exhausted = false;  // a sub-search hit its node budget; no verdict
};

// Full enumeration of all 2^(n(n-1)/2) labeled tournaments for each
// n <= n_max (n_max <= 6). Containment is monotone under adding vertices,
// so the answer is one past the largest counterexample order.
FBoundResult oracle_f_bound(int k, int n_max, const OracleOptions& opt = {});

}  // namespace timm
