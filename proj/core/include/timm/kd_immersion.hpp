#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "timm/immersion.hpp"
#include "timm/tournament.hpp"
#include "timm/vertex_set.hpp"

namespace timm {

// One recorded inequality evaluation, in the form lhs-vs-rhs at some step.
struct KdCheck {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool ok = false;
  int step = 0;  // 0 for checks made before the step loop
};

struct KdTrace {
  std::vector<KdCheck> checks;
  int steps = 0;
  int descents = 0;
  bool low_degree_exit = false;  // immersion built from the low out-degree set

  int violations() const;
  std::string summary() const;
};

// Working state of one step: the active vertex set, the chosen branch set,
// and the greedily committed paths so far. Witness names the first ordered
// branch pair that admitted no path of length <= 3.
struct StepState {
  int step = 1;
  VertexSet active;
  std::vector<int> branches;  // ascending vertex id
  std::map<std::pair<int, int>, std::vector<int>> paths;
  std::set<std::pair<int, int>> used_edges;
  std::optional<std::pair<int, int>> witness;
};

// The sets carved out of the active set by a stuck pair (x, y):
//   fresh_out  out-neighbours of x apart from branches and path midpoints
//   fresh_in   in-neighbours of y apart from branches and path midpoints
//   residue    active vertices in none of the named sets
//   blocked    active minus fresh_out minus fresh_in
//   descent    fresh_out plus blocked, i.e. active minus fresh_in
struct FailurePartition {
  std::pair<int, int> witness{-1, -1};
  VertexSet fresh_out;
  VertexSet fresh_in;
  VertexSet residue;
  VertexSet blocked;
  VertexSet descent;
};

// What one descent step removed; kept across steps because the low-degree
// construction routes its paths through these pools.
struct DescentLayer {
  VertexSet fresh_out;
  VertexSet fresh_in;
};

// k vertices of the active set with out- and in-degree at least 4k inside
// it and out-degrees pairwise within 2k, found via the similar-degree set
// (eps = 1/2, buckets of width 2k) of the induced subtournament, truncated
// to the k lowest original ids. Requires |active| >= 32k (throws
// std::invalid_argument below that); the guarantees are asserted and their
// failure raises InternalConsistencyError.
std::vector<int> select_branch_set(const Tournament& t, const VertexSet& active,
                                   int k, KdTrace* trace = nullptr, int step = 0);

// Greedy pass over all ordered branch pairs in lexicographic order: direct
// edge, then 2-paths, then 3-paths, midpoints ascending, inside the active
// set, edge-disjoint from everything committed, no branch vertex internal.
// True on a complete map; false leaves state.witness set.
bool try_paths(const Tournament& t, StepState& state);

// Carves the partition for state.witness and asserts the size bounds
// |A| >= k, |B| >= k, |C| <= 5k, |H| <= 10k (InternalConsistencyError on
// breach; they follow from the branch-set degree guarantees whenever the
// witness came from an exhausted search). Records into trace when given.
FailurePartition partition_failure(const Tournament& t, const StepState& state,
                                   KdTrace* trace = nullptr);

struct P1Outcome {
  std::optional<VertexSet> next_active;  // the descent set, when it passes
  std::vector<int> low_degree;  // else k vertices, lowest out-degree first
};

// All but at most k-1 vertices of the descent set must have out-degree at
// least (C-1)k inside it; otherwise reports the k smallest offenders
// (ties by ascending id).
P1Outcome p1_check(const Tournament& t, const FailurePartition& part,
                   int threshold_c, int k);

// Routes every ordered pair (v_r, v_s) of the low-degree set as a 3-edge
// path v_r -> b -> a -> v_s with b in some removed in-pool and a in the
// matching out-pool. Asserts the degree claims that make the greedy choice
// succeed, then verifies the immersion; any breach raises
// InternalConsistencyError.
Immersion p2_construct(const Tournament& t, const std::vector<DescentLayer>& layers,
                       const std::vector<int>& low_degree, KdTrace* trace = nullptr);

struct KdOptions {
  int threshold_c = 59;
  // Run the step loop even when the minimum out-degree is below C*k. The
  // usual guarantees then become trace entries: their failure ends the run
  // as `exhausted` instead of raising.
  bool best_effort = false;
};

enum class KdStatus { found, infeasible, exhausted };

struct KdResult {
  KdStatus status = KdStatus::infeasible;
  std::optional<Immersion> immersion;
  KdTrace trace;
  std::string reason;  // set for infeasible and exhausted
};

// Finds a strong immersion of the complete digraph on k branch vertices
// with all paths of at most 3 edges, by repeated branch selection and
// descent into the stuck pair's structure. Requires minimum out-degree at
// least C*k unless best_effort is set; k < 1 throws std::invalid_argument,
// and so does a threshold C without the descent guarantee
// 2(C-13)(C-2) >= (C+13)^2 outside best-effort mode.
KdResult find_kd_immersion(const Tournament& t, int k, const KdOptions& opt = {});

}  // namespace timm
