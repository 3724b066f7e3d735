#include "timm/kd_immersion.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "timm/errors.hpp"
#include "timm/log.hpp"
#include "timm/ordering.hpp"
#include "timm/verifier.hpp"

namespace timm {

namespace {

void note(KdTrace* trace, const std::string& name, long long lhs, long long rhs,
          bool ok, int step) {
  if (trace) trace->checks.push_back({name, lhs, rhs, ok, step});
}

void enforce(KdTrace* trace, const std::string& name, long long lhs, long long rhs,
             bool ok, int step) {
  note(trace, name, lhs, rhs, ok, step);
  if (!ok)
    throw InternalConsistencyError(name, "step " + std::to_string(step) + ": have " +
                                             std::to_string(lhs) + ", against " +
                                             std::to_string(rhs));
}

std::string pair_text(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace

int KdTrace::violations() const {
  int count = 0;
  for (const auto& c : checks)
    if (!c.ok) ++count;
  return count;
}

std::string KdTrace::summary() const {
  std::string out = "steps=" + std::to_string(steps) +
                    " descents=" + std::to_string(descents) +
                    " checks=" + std::to_string(checks.size()) +
                    " violations=" + std::to_string(violations());
  if (low_degree_exit) out += " low-degree-exit";
  return out;
}

std::vector<int> select_branch_set(const Tournament& t, const VertexSet& active,
                                   int k, KdTrace* trace, int step) {
  if (k < 1) throw std::invalid_argument("select_branch_set: k must be at least 1");
  const int m = active.count();
  if (m < 32 * k)
    throw std::invalid_argument("select_branch_set: need 32k active vertices, have " +
                                std::to_string(m));

  std::vector<int> back_map;
  const Tournament sub = induced_subtournament(t, active, &back_map);
  const SimilarDegreeResult similar = similar_degree_set(sub, Ratio{1, 2}, 2 * k);
  enforce(trace, "similar-degree bucket >= k",
          similar.members ? similar.members->count() : 0, k,
          similar.members && similar.members->count() >= k, step);

  std::vector<int> picked;
  similar.members->for_each([&](int v) {
    if (static_cast<int>(picked.size()) < k) picked.push_back(back_map[static_cast<std::size_t>(v)]);
  });

  int min_deg = m;
  int lo_out = m;
  int hi_out = 0;
  for (int v : picked) {
    const int out = t.out_degree_within(v, active);
    const int in = t.in_degree_within(v, active);
    min_deg = std::min({min_deg, out, in});
    lo_out = std::min(lo_out, out);
    hi_out = std::max(hi_out, out);
  }
  enforce(trace, "branch degrees >= 4k within active", min_deg, 4LL * k,
          min_deg >= 4 * k, step);
  enforce(trace, "branch out-degree spread <= 2k", hi_out - lo_out, 2LL * k,
          hi_out - lo_out <= 2 * k, step);
  return picked;
}

bool try_paths(const Tournament& t, StepState& state) {
  const int n = t.size();
  VertexSet branch_set(n);
  for (int v : state.branches) branch_set.insert(v);
  const std::vector<int> pool = state.active.to_vector();

  const auto open = [&](int u, int v) {
    return t.edge(u, v) && state.used_edges.count({u, v}) == 0;
  };
  const auto commit = [&](std::vector<int> path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      state.used_edges.insert({path[i], path[i + 1]});
    state.paths[{path.front(), path.back()}] = std::move(path);
  };

  for (int u : state.branches) {
    for (int w : state.branches) {
      if (u == w || state.paths.count({u, w})) continue;
      if (open(u, w)) {
        commit({u, w});
        continue;
      }
      bool done = false;
      for (int a : pool) {
        if (branch_set.contains(a) || !open(u, a)) continue;
        if (open(a, w)) {
          commit({u, a, w});
          done = true;
          break;
        }
      }
      for (int a : pool) {
        if (done) break;
        if (branch_set.contains(a) || !open(u, a)) continue;
        for (int b : pool) {
          if (b == a || branch_set.contains(b)) continue;
          if (open(a, b) && open(b, w)) {
            commit({u, a, b, w});
            done = true;
            break;
          }
        }
      }
      if (!done) {
        state.witness = {u, w};
        return false;
      }
    }
  }
  return true;
}

FailurePartition partition_failure(const Tournament& t, const StepState& state,
                                   KdTrace* trace) {
  if (!state.witness)
    throw std::invalid_argument("partition_failure: state carries no witness");
  const auto [x, y] = *state.witness;
  const int n = t.size();
  const int k = static_cast<int>(state.branches.size());

  VertexSet branch_set(n);
  for (int v : state.branches) branch_set.insert(v);

  VertexSet mid_out(n);  // internal vertices of committed paths leaving x
  VertexSet mid_in(n);   // internal vertices of committed paths entering y
  for (const auto& [pair, path] : state.paths) {
    if (pair.first == x)
      for (std::size_t i = 1; i + 1 < path.size(); ++i) mid_out.insert(path[i]);
    if (pair.second == y)
      for (std::size_t i = 1; i + 1 < path.size(); ++i) mid_in.insert(path[i]);
  }

  const VertexSet excluded = branch_set | mid_out | mid_in;
  VertexSet fresh_out(n);
  VertexSet fresh_in(n);
  state.active.for_each([&](int v) {
    if (excluded.contains(v)) return;
    if (t.edge(x, v)) fresh_out.insert(v);
    if (t.edge(v, y)) fresh_in.insert(v);
  });

  // A vertex in both sets would close an unused 2-path from x to y,
  // contradicting the witness.
  const VertexSet overlap = fresh_out & fresh_in;
  enforce(trace, "A_i and B_i disjoint", overlap.count(), 0, overlap.empty(),
          state.step);

  VertexSet residue = state.active;
  residue -= excluded;
  residue -= fresh_out;
  residue -= fresh_in;

  VertexSet blocked = state.active;
  blocked -= fresh_out;
  blocked -= fresh_in;

  VertexSet descent = state.active;
  descent -= fresh_in;

  enforce(trace, "|A_i| >= k", fresh_out.count(), k, fresh_out.count() >= k,
          state.step);
  enforce(trace, "|B_i| >= k", fresh_in.count(), k, fresh_in.count() >= k,
          state.step);
  enforce(trace, "|C_i| <= 5k", residue.count(), 5LL * k, residue.count() <= 5 * k,
          state.step);
  enforce(trace, "|H_i| <= 10k", blocked.count(), 10LL * k, blocked.count() <= 10 * k,
          state.step);

  return {*state.witness, std::move(fresh_out), std::move(fresh_in),
          std::move(residue), std::move(blocked), std::move(descent)};
}

P1Outcome p1_check(const Tournament& t, const FailurePartition& part,
                   int threshold_c, int k) {
  const long long bar = static_cast<long long>(threshold_c - 1) * k;
  std::vector<std::pair<int, int>> low;  // (out-degree, vertex)
  part.descent.for_each([&](int v) {
    const int deg = t.out_degree_within(v, part.descent);
    if (deg < bar) low.emplace_back(deg, v);
  });

  P1Outcome out;
  if (static_cast<int>(low.size()) <= k - 1) {
    out.next_active = part.descent;
    return out;
  }
  std::sort(low.begin(), low.end());
  out.low_degree.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.low_degree.push_back(low[static_cast<std::size_t>(i)].second);
  return out;
}

Immersion p2_construct(const Tournament& t, const std::vector<DescentLayer>& layers,
                       const std::vector<int>& low_degree, KdTrace* trace) {
  if (layers.empty())
    throw std::invalid_argument("p2_construct: at least one descent layer required");
  const int k = static_cast<int>(low_degree.size());
  if (k < 1) throw std::invalid_argument("p2_construct: empty branch set");
  const int n = t.size();
  const int step = static_cast<int>(layers.size());

  std::vector<int> branches = low_degree;
  std::sort(branches.begin(), branches.end());
  VertexSet branch_set(n);
  for (int v : branches) branch_set.insert(v);

  VertexSet pooled_in(n);
  for (const auto& layer : layers) pooled_in |= layer.fresh_in;
  const std::vector<int> pooled_list = pooled_in.to_vector();

  std::vector<std::vector<int>> layer_out(layers.size());
  std::vector<int> layer_of(static_cast<std::size_t>(n), -1);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    VertexSet open_out = layers[l].fresh_out;
    open_out -= branch_set;
    layer_out[l] = open_out.to_vector();
    layers[l].fresh_in.for_each([&](int b) { layer_of[static_cast<std::size_t>(b)] = static_cast<int>(l); });
  }

  // The two degree claims behind the greedy choices; record the worst case
  // of each, fail on the first breach.
  long long worst_out = n;
  long long worst_in = n;
  for (int v : branches) {
    const long long out = t.out_degree_within(v, pooled_in);
    worst_out = std::min(worst_out, out);
    if (out < k - 1)
      throw InternalConsistencyError(
          "branch out-degree >= k-1 into removed in-pools",
          "vertex " + std::to_string(v) + " reaches only " + std::to_string(out));
    for (std::size_t l = 0; l < layers.size(); ++l) {
      VertexSet open_out = layers[l].fresh_out;
      open_out -= branch_set;
      const long long in = t.in_degree_within(v, open_out);
      worst_in = std::min(worst_in, in);
      if (in < 3LL * k - 1)
        throw InternalConsistencyError(
            "branch in-degree >= 3k-1 in each out-pool",
            "vertex " + std::to_string(v) + " sees only " + std::to_string(in) +
                " in layer " + std::to_string(l + 1));
    }
  }
  note(trace, "branch out-degree >= k-1 into removed in-pools", worst_out, k - 1,
       true, step);
  note(trace, "branch in-degree >= 3k-1 in each out-pool", worst_in, 3LL * k - 1,
       true, step);

  Immersion im;
  im.pattern = PatternKind::complete_digraph;
  im.k = k;
  im.branches = branches;

  std::vector<std::set<int>> taken_out(static_cast<std::size_t>(k));
  std::vector<std::set<int>> taken_in(static_cast<std::size_t>(k));
  std::set<std::pair<int, int>> taken_mid;

  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      if (r == s) continue;
      const int vr = branches[static_cast<std::size_t>(r)];
      const int vs = branches[static_cast<std::size_t>(s)];

      int b = -1;
      for (int cand : pooled_list) {
        if (!t.edge(vr, cand) || taken_out[static_cast<std::size_t>(r)].count(cand)) continue;
        b = cand;
        break;
      }
      if (b < 0)
        throw InternalConsistencyError(
            "path start candidates available",
            "pair " + pair_text({vr, vs}) + ": every pooled out-neighbour of " +
                std::to_string(vr) + " already taken");

      const int l = layer_of[static_cast<std::size_t>(b)];
      int a = -1;
      for (int cand : layer_out[static_cast<std::size_t>(l)]) {
        if (!t.edge(b, cand) || !t.edge(cand, vs)) continue;
        if (taken_in[static_cast<std::size_t>(s)].count(cand)) continue;
        if (taken_mid.count({b, cand})) continue;
        a = cand;
        break;
      }
      if (a < 0)
        throw InternalConsistencyError(
            "path middle candidates available",
            "pair " + pair_text({vr, vs}) + ": no free hop from " + std::to_string(b) +
                " in layer " + std::to_string(l + 1));

      taken_out[static_cast<std::size_t>(r)].insert(b);
      taken_in[static_cast<std::size_t>(s)].insert(a);
      taken_mid.insert({b, a});
      im.paths[{vr, vs}] = {vr, b, a, vs};
    }
  }

  if (const auto bad = verify_immersion(t, im, 3, true))
    throw InternalConsistencyError("low-degree construction verifies", bad->describe());
  if (trace) trace->low_degree_exit = true;
  return im;
}

KdResult find_kd_immersion(const Tournament& t, int k, const KdOptions& opt) {
  if (k < 1) throw std::invalid_argument("find_kd_immersion: k must be at least 1");
  const int c = opt.threshold_c;
  const int n = t.size();

  KdResult res;

  const long long descent_lhs = 2LL * (c - 13) * (c - 2);
  const long long descent_rhs = static_cast<long long>(c + 13) * (c + 13);
  const bool c_ok = c >= 14 && descent_lhs >= descent_rhs;
  note(&res.trace, "2(C-13)(C-2) >= (C+13)^2", descent_lhs, descent_rhs, c_ok, 0);
  if (!c_ok && !opt.best_effort)
    throw std::invalid_argument("find_kd_immersion: C = " + std::to_string(c) +
                                " lacks the descent guarantee");

  if (n == 0) {
    res.reason = "empty tournament";
    return res;
  }

  if (k == 1) {
    // A single branch vertex needs no paths at all.
    Immersion im;
    im.pattern = PatternKind::complete_digraph;
    im.k = 1;
    im.branches = {0};
    if (const auto bad = verify_immersion(t, im, 3, true))
      throw InternalConsistencyError("single-vertex immersion verifies", bad->describe());
    res.status = KdStatus::found;
    res.immersion = std::move(im);
    return res;
  }

  const int min_out = t.min_out_degree();
  const bool degree_ok = static_cast<long long>(min_out) >= static_cast<long long>(c) * k;
  note(&res.trace, "delta+ >= Ck", min_out, static_cast<long long>(c) * k, degree_ok, 0);
  if (!degree_ok && !opt.best_effort) {
    res.reason = "minimum out-degree " + std::to_string(min_out) + " is below " +
                 std::to_string(c) + "k = " + std::to_string(static_cast<long long>(c) * k);
    return res;
  }
  // With the hypothesis intact every recorded inequality is guaranteed, so
  // a breach is a bug and raises. Below it they are merely probes.
  const bool guaranteed = c_ok && degree_ok;

  std::vector<DescentLayer> layers;
  VertexSet active = VertexSet::all(n);

  for (int step = 1;; ++step) {
    res.trace.steps = step;

    const bool room = active.count() >= 32 * k;
    note(&res.trace, "|active| >= 32k", active.count(), 32LL * k, room, step);
    if (!room) {
      if (guaranteed)
        throw InternalConsistencyError("|active| >= 32k",
                                       "step " + std::to_string(step) + ": " +
                                           std::to_string(active.count()) + " vertices");
      res.status = KdStatus::exhausted;
      res.reason = "active set shrank below 32k at step " + std::to_string(step);
      return res;
    }

    StepState state{step, active, select_branch_set(t, active, k, &res.trace, step),
                    {}, {}, std::nullopt};
    if (try_paths(t, state)) {
      Immersion im;
      im.pattern = PatternKind::complete_digraph;
      im.k = k;
      im.branches = state.branches;
      im.paths = std::move(state.paths);
      if (const auto bad = verify_immersion(t, im, 3, true))
        throw InternalConsistencyError("greedy step immersion verifies", bad->describe());
      res.status = KdStatus::found;
      res.immersion = std::move(im);
      log_line(2, "kd: step " + std::to_string(step) + " completed all pairs");
      return res;
    }
    log_line(2, "kd: step " + std::to_string(step) + " stuck at " +
                    pair_text(*state.witness));

    try {
      const FailurePartition part = partition_failure(t, state, &res.trace);
      layers.push_back({part.fresh_out, part.fresh_in});

      P1Outcome p1 = p1_check(t, part, c, k);
      if (p1.next_active) {
        active = std::move(*p1.next_active);
        ++res.trace.descents;
        continue;
      }
      res.immersion = p2_construct(t, layers, p1.low_degree, &res.trace);
      res.status = KdStatus::found;
      return res;
    } catch (const InternalConsistencyError& e) {
      if (guaranteed) throw;
      res.status = KdStatus::exhausted;
      res.reason = std::string("probe stopped: ") + e.inequality();
      return res;
    }
  }
}

}  // namespace timm
