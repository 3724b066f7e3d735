#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "timm/immersion.hpp"
#include "timm/pairing.hpp"
#include "timm/tournament.hpp"
#include "timm/vertex_set.hpp"

namespace timm {

// Vertices sorted by decreasing out-degree, ties by ascending index, plus
// the per-vertex neighbour lists the badness tests walk:
//   ahead[x]  = in-neighbours of x placed after x, by rising out-degree
//               inside that set (ties ascending index),
//   behind[x] = out-neighbours of x placed before x, by rising in-degree
//               inside that set (ties ascending index).
// out_at / in_at are adjacency rows re-indexed by position so window
// intersections reduce to word operations.
struct DegreeOrderingView {
  int n = 0;
  std::vector<int> order;  // position -> vertex
  std::vector<int> pos;    // vertex -> position
  std::vector<std::vector<int>> ahead;
  std::vector<std::vector<int>> behind;
  std::vector<std::vector<std::uint64_t>> out_at;  // bit p: vertex -> order[p]
  std::vector<std::vector<std::uint64_t>> in_at;   // bit p: order[p] -> vertex
};

DegreeOrderingView degree_ordering(const Tournament& t);

// A sampled vertex x is in-bad when, walking ahead[x] = z_1, z_2, ..., some
// prefix violates one of two density bounds: more than i/10 of z_1..z_i are
// sampled, or at least i/20 sampled vertices sit among the first floor(i/2)
// members (by global position) of N+(x) intersected with N-(z_i).
// Out-badness is the mirror statement over behind[x]. Vertices outside the
// sample are never bad.
bool is_in_bad(const DegreeOrderingView& view, const VertexSet& sample, int x);
bool is_out_bad(const DegreeOrderingView& view, const VertexSet& sample, int x);

// Sampled vertices that are neither in-bad nor out-bad, judged against the
// full sample in one pass.
VertexSet filter_good(const DegreeOrderingView& view, const VertexSet& sample);

// Backward edges of the branch set under the degree ordering, each with its
// pool of candidate midpoints, packed as a pairing instance: elements are
// the backward edges, the shared side is every vertex outside the branch
// set, and each branch contributes one hyperedge per direction.
struct BackwardEdgeInstance {
  struct BackEdge {
    int from = 0;  // earlier branch in the ordering
    int to = 0;    // later branch; the host arc runs to -> from
  };

  std::vector<int> branch_order;  // branch vertices by position
  std::vector<BackEdge> edges;
  std::vector<int> pool;  // non-branch vertices, ascending
  PairingInstance instance;
};

// Throws InternalConsistencyError if a branch set that passes the badness
// filter fails the guaranteed midpoint supply (the j-th backward edge at a
// good endpoint has fewer than 4j candidates).
BackwardEdgeInstance build_pairing_instance(const Tournament& t,
                                            const DegreeOrderingView& view,
                                            const VertexSet& branch_set);

// Forward pairs become direct arcs, backward pairs route through the paired
// midpoint. Verifies the result (strong, paths of at most 2 arcs) and
// throws InternalConsistencyError on any violation.
Immersion assemble_immersion(const Tournament& t,
                             const BackwardEdgeInstance& inst,
                             const Pairing& pairing);

enum class TtMode { faithful, adaptive };

struct TtConfig {
  TtMode mode = TtMode::adaptive;
  // Overrides the mode's sampling probability (faithful default is
  // faithful_probability(), adaptive sweeps a small grid).
  std::optional<double> sample_probability;
  int retries = 8;  // adaptive only; faithful always draws one sample
  std::uint64_t seed = 1;
};

struct TtResult {
  std::optional<Immersion> immersion;
  int best_good = 0;         // largest filtered sample seen
  bool via_fallback = false;
  int fallback_chain = 0;    // greedy chain length when the fallback ran
};

// Samples vertices, filters to the good set, and when at least k survive
// routes the backward edges through greedily paired midpoints. In adaptive
// mode a greedy dominant chain serves as fallback when sampling comes up
// short. k < 1 throws std::invalid_argument.
TtResult find_tt_immersion(const Tournament& t, int k, const TtConfig& cfg = {});

// Repeatedly take a maximum out-degree vertex (ties lowest index) and
// restrict to its out-neighbourhood; the result spans a transitive
// subtournament in chain order.
std::vector<int> greedy_transitive_chain(const Tournament& t);

// Sampling probability that makes the expected bad fraction provably small.
double faithful_probability();

// 2p(q^2/(1-q^2) + q/(1-q)) with q = (10ep)^(1/20); per-vertex badness
// bound. Throws std::domain_error unless 0 < 10ep < 1.
double badness_probability_bound(double p);

// (e^(beta-1) beta^(-beta))^(pn), evaluated in log space. Requires
// beta > 1, 0 < p < 1, n > 0; throws std::domain_error otherwise.
double chernoff_bound(double beta, double p, double n);

}  // namespace timm
