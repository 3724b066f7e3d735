#include "timm/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace timm {

namespace {

struct PathSearch {
  const Tournament& t;
  int max_len;
  bool strong;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;

  std::vector<std::pair<int, int>> pairs;
  std::vector<char> is_branch;  // indexed by vertex
  std::set<std::pair<int, int>> used;
  std::vector<std::vector<int>> chosen;  // per pair

  bool tick() {
    if (nodes >= budget) {
      out_of_budget = true;
      return false;
    }
    ++nodes;
    return true;
  }

  bool internal_allowed(int v, int u, int w) const {
    if (v == u || v == w) return false;
    return !strong || !is_branch[static_cast<std::size_t>(v)];
  }

  // Does any path of <= max_len edges from u to w exist, ignoring edge
  // reuse? Sound pruning: disjointness only removes options.
  bool reachable(int u, int w) const {
    if (t.edge(u, w)) return true;
    int n = t.size();
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> frontier{u};
    dist[static_cast<std::size_t>(u)] = 0;
    for (int step = 1; step < max_len && !frontier.empty(); ++step) {
      std::vector<int> next;
      for (int x : frontier)
        for (int m = 0; m < n; ++m)
          if (dist[static_cast<std::size_t>(m)] < 0 && t.edge(x, m) &&
              internal_allowed(m, u, w)) {
            if (t.edge(m, w)) return true;
            dist[static_cast<std::size_t>(m)] = step;
            next.push_back(m);
          }
      frontier = std::move(next);
    }
    return false;
  }

  // Enumerate candidate paths for pairs[idx] in length-then-lex order and
  // recurse; true once a full assignment exists.
  bool assign(std::size_t idx) {
    if (idx == pairs.size()) return true;
    auto [u, w] = pairs[idx];
    std::vector<int> path{u};
    for (int len = 1; len <= max_len; ++len)
      if (extend(idx, path, u, w, len)) return true;
    return false;
  }

  bool extend(std::size_t idx, std::vector<int>& path, int u, int w, int len) {
    if (out_of_budget) return false;
    int cur = path.back();
    int remaining = len - static_cast<int>(path.size());  // internals still to place
    if (remaining == 0) {
      std::pair<int, int> last{cur, w};
      if (!t.edge(cur, w) || used.count(last)) return false;
      if (!tick()) return false;
      used.insert(last);
      path.push_back(w);
      if (assign(idx + 1)) {
        chosen[idx] = path;
        path.pop_back();
        used.erase(last);
        return true;
      }
      path.pop_back();
      used.erase(last);
      return false;
    }
    for (int m = 0; m < t.size(); ++m) {
      if (!internal_allowed(m, u, w)) continue;
      if (std::find(path.begin(), path.end(), m) != path.end()) continue;
      std::pair<int, int> e{cur, m};
      if (!t.edge(cur, m) || used.count(e)) continue;
      used.insert(e);
      path.push_back(m);
      bool done = extend(idx, path, u, w, len);
      path.pop_back();
      used.erase(e);
      if (done) return true;
      if (out_of_budget) return false;
    }
    return false;
  }
};

// Runs the per-pair search for one ordered branch tuple.
bool try_branches(const Tournament& t, PatternKind pattern, const std::vector<int>& branches,
                  int max_len, const OracleOptions& opt, std::uint64_t& nodes,
                  bool& out_of_budget, Immersion* out) {
  PathSearch search{t, max_len, opt.strong, opt.node_budget};
  search.nodes = nodes;
  search.pairs = required_pairs(pattern, branches);
  search.is_branch.assign(static_cast<std::size_t>(t.size()), 0);
  for (int b : branches) search.is_branch[static_cast<std::size_t>(b)] = 1;
  search.chosen.resize(search.pairs.size());

  bool found = true;
  for (const auto& [u, w] : search.pairs)
    if (!search.reachable(u, w)) {
      found = false;
      break;
    }
  if (found) found = search.assign(0);

  nodes = search.nodes;
  out_of_budget = search.out_of_budget;
  if (found && out) {
    out->pattern = pattern;
    out->k = static_cast<int>(branches.size());
    out->branches = branches;
    out->paths.clear();
    for (std::size_t i = 0; i < search.pairs.size(); ++i)
      out->paths.emplace(search.pairs[i], search.chosen[i]);
  }
  return found;
}

bool degree_slots_ok(const Tournament& t, PatternKind pattern, const std::vector<int>& branches) {
  int k = static_cast<int>(branches.size());
  for (int i = 0; i < k; ++i) {
    int v = branches[static_cast<std::size_t>(i)];
    // Edge-disjoint paths leaving (entering) a branch need distinct first
    // (last) edges; the transitive pattern sources k-1-i and sinks i paths
    // at slot i, the complete pattern k-1 each way everywhere.
    int need_out = pattern == PatternKind::transitive_tournament ? k - 1 - i : k - 1;
    int need_in = pattern == PatternKind::transitive_tournament ? i : k - 1;
    if (t.out_degree(v) < need_out || t.in_degree(v) < need_in) return false;
  }
  return true;
}

}  // namespace

bool branch_degree_screen(const Tournament& t, PatternKind pattern, int k) {
  if (k < 1) throw std::invalid_argument("pattern order must be positive");
  if (k > t.size()) return false;
  if (pattern == PatternKind::transitive_tournament) {
    for (int v = 0; v < t.size(); ++v)
      if (t.out_degree(v) >= k - 1) return true;
    return false;
  }
  int qualified = 0;
  for (int v = 0; v < t.size(); ++v)
    if (t.out_degree(v) >= k - 1 && t.in_degree(v) >= k - 1) ++qualified;
  return qualified >= k;
}

OracleResult oracle_find_immersion(const Tournament& t, PatternKind pattern, int k,
                                   int max_len, const OracleOptions& opt) {
  if (k < 1) throw std::invalid_argument("pattern order must be positive");
  if (max_len < 1) throw std::invalid_argument("max_len must be positive");

  OracleResult res;
  if (k > t.size()) return res;  // exhausted trivially

  std::vector<int> combo(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
  Immersion im;
  bool out_of_budget = false;

  auto run_tuple = [&](const std::vector<int>& branches) {
    if (res.nodes_used >= opt.node_budget) {
      out_of_budget = true;
      return false;
    }
    ++res.nodes_used;
    if (!degree_slots_ok(t, pattern, branches)) return false;
    return try_branches(t, pattern, branches, max_len, opt, res.nodes_used, out_of_budget,
                        &im);
  };

  while (true) {
    bool found = false;
    if (pattern == PatternKind::complete_digraph) {
      found = run_tuple(combo);
    } else {
      std::vector<int> perm = combo;
      do {
        found = run_tuple(perm);
      } while (!found && !out_of_budget && std::next_permutation(perm.begin(), perm.end()));
    }
    if (found) {
      res.status = OracleStatus::found;
      res.immersion = std::move(im);
      return res;
    }
    if (out_of_budget) {
      res.status = OracleStatus::budget_exceeded;
      return res;
    }
    // next k-combination in lex order
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == t.size() - k + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  res.status = OracleStatus::exhausted;
  return res;
}

FBoundResult oracle_f_bound(int k, int n_max, const OracleOptions& opt) {
  if (k < 1) throw std::invalid_argument("pattern order must be positive");
  if (n_max < 1 || n_max > 6)
    throw std::invalid_argument("full labeled enumeration supports n_max in [1, 6]");

  FBoundResult res;
  res.k = k;
  res.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
      Tournament t = Tournament::build(n, [&](int u, int v) {
        // pair (u, v), u < v, occupies bit u*n - u(u+1)/2 + (v - u - 1)
        int idx = u * n - u * (u + 1) / 2 + (v - u - 1);
        return ((mask >> idx) & 1u) != 0;
      });
      OracleResult r =
          oracle_find_immersion(t, PatternKind::transitive_tournament, k, 2, opt);
      if (r.status == OracleStatus::budget_exceeded) {
        res.budget_exhausted = true;
        return res;
      }
      if (r.status == OracleStatus::exhausted) {
        res.last_counterexample_n = n;
        res.counterexample = t;
        break;  // one counterexample settles this n
      }
    }
  }
  if (res.last_counterexample_n < n_max) res.value = res.last_counterexample_n + 1;
  return res;
}

}  // namespace timm
