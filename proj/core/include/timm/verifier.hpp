#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "timm/immersion.hpp"
#include "timm/tournament.hpp"

namespace timm {

struct ImmersionViolation {
  std::string what;                      // human-readable reason
  std::pair<int, int> pair{-1, -1};      // offending pattern edge, if any
  std::pair<int, int> edge{-1, -1};      // offending host edge, if any
  std::string describe() const;
};

// Checks, in order: branch list well-formed; the path map covers exactly
// the pattern edges; each path starts/ends at its pair, uses only edges of
// t, repeats no vertex, and has between 1 and max_len edges (internal
// vertices avoid branch vertices when strong). Finally all paths must be
// pairwise edge disjoint. Returns the first violation found, or nullopt.
std::optional<ImmersionViolation> verify_immersion(const Tournament& t,
                                                   const Immersion& im, int max_len,
                                                   bool strong);

}  // namespace timm
