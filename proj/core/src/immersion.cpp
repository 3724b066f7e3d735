#include "timm/immersion.hpp"

namespace timm {

std::vector<std::pair<int, int>> required_pairs(PatternKind pattern,
                                                const std::vector<int>& branches) {
  std::vector<std::pair<int, int>> out;
  std::size_t k = branches.size();
  if (pattern == PatternKind::transitive_tournament) {
    out.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) out.emplace_back(branches[i], branches[j]);
  } else {
    out.reserve(k * (k - 1));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) out.emplace_back(branches[i], branches[j]);
  }
  return out;
}

}  // namespace timm
