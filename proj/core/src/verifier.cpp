#include "timm/verifier.hpp"

#include <algorithm>
#include <set>

namespace timm {

namespace {

std::string pair_text(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

}  // namespace

std::string ImmersionViolation::describe() const {
  std::string s = what;
  if (pair.first >= 0) s += " at pair " + pair_text(pair);
  if (edge.first >= 0) s += ", edge " + pair_text(edge);
  return s;
}

std::optional<ImmersionViolation> verify_immersion(const Tournament& t,
                                                   const Immersion& im, int max_len,
                                                   bool strong) {
  auto fail = [](std::string what, std::pair<int, int> pr = {-1, -1},
                 std::pair<int, int> ed = {-1, -1}) {
    return ImmersionViolation{std::move(what), pr, ed};
  };

  if (im.k != static_cast<int>(im.branches.size()))
    return fail("branch count disagrees with k");
  std::set<int> branch_set(im.branches.begin(), im.branches.end());
  if (branch_set.size() != im.branches.size()) return fail("duplicate branch vertex");
  for (int b : im.branches)
    if (b < 0 || b >= t.size()) return fail("branch vertex " + std::to_string(b) + " out of range");

  auto pairs = required_pairs(im.pattern, im.branches);
  if (im.paths.size() != pairs.size())
    for (const auto& [key, path] : im.paths)
      if (std::find(pairs.begin(), pairs.end(), key) == pairs.end())
        return fail("path for a pair the pattern does not require", key);

  std::set<std::pair<int, int>> used;
  for (const auto& pr : pairs) {
    auto it = im.paths.find(pr);
    if (it == im.paths.end()) return fail("missing path", pr);
    const std::vector<int>& path = it->second;
    if (path.size() < 2) return fail("path shorter than one edge", pr);
    int len = static_cast<int>(path.size()) - 1;
    if (len > max_len)
      return fail("path has " + std::to_string(len) + " edges, limit " +
                      std::to_string(max_len),
                  pr);
    if (path.front() != pr.first || path.back() != pr.second)
      return fail("path endpoints disagree with the pair", pr);
    std::set<int> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
      int v = path[i];
      if (v < 0 || v >= t.size())
        return fail("path vertex " + std::to_string(v) + " out of range", pr);
      if (!seen.insert(v).second) return fail("path repeats a vertex", pr);
      if (strong && i > 0 && i + 1 < path.size() && branch_set.count(v))
        return fail("branch vertex " + std::to_string(v) + " internal to a path", pr);
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      std::pair<int, int> e{path[i], path[i + 1]};
      if (!t.edge(e.first, e.second)) return fail("path uses a non-edge", pr, e);
      if (!used.insert(e).second) return fail("edge used by two paths", pr, e);
    }
  }
  return std::nullopt;
}

}  // namespace timm
