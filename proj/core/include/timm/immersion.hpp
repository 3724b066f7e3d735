#pragma once

#include <map>
#include <utility>
#include <vector>

namespace timm {

// Pattern digraphs whose immersions we certify. For transitive_tournament
// the branch list order carries the pattern: earlier entries must reach
// every later entry. For complete_digraph every ordered pair needs a path.
enum class PatternKind { transitive_tournament, complete_digraph };

struct Immersion {
  PatternKind pattern = PatternKind::transitive_tournament;
  int k = 0;
  std::vector<int> branches;  // ordered, pairwise distinct
  // Pattern edge (u, w) -> directed path u = v0, v1, ..., vl = w in the
  // host tournament. Paths across pairs must be pairwise edge disjoint.
  std::map<std::pair<int, int>, std::vector<int>> paths;

  bool operator==(const Immersion&) const = default;
};

// Pattern edges as host-vertex pairs, in certificate order.
std::vector<std::pair<int, int>> required_pairs(PatternKind pattern,
                                                const std::vector<int>& branches);

}  // namespace timm
