#include "timm/tt_immersion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "timm/errors.hpp"
#include "timm/log.hpp"
#include "timm/rng.hpp"
#include "timm/verifier.hpp"

namespace timm {

namespace {

std::vector<std::uint64_t> position_mask(const DegreeOrderingView& view,
                                         const VertexSet& members) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>((view.n + 63) / 64), 0);
  for (int p = 0; p < view.n; ++p)
    if (members.contains(view.order[p])) mask[p >> 6] |= std::uint64_t{1} << (p & 63);
  return mask;
}

// Sampled count among the first `take` set positions of a & b.
int sampled_in_window(const std::vector<std::uint64_t>& a,
                      const std::vector<std::uint64_t>& b,
                      const std::vector<std::uint64_t>& sample_at, int take) {
  if (take <= 0) return 0;
  int seen = 0;
  int hit = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t word = a[w] & b[w];
    if (word == 0) continue;
    const int here = std::popcount(word);
    if (seen + here <= take) {
      hit += std::popcount(word & sample_at[w]);
      seen += here;
      if (seen == take) break;
    } else {
      std::uint64_t kept = 0;
      for (int need = take - seen; need > 0; --need) {
        const std::uint64_t low = word & (~word + 1);
        kept |= low;
        word ^= low;
      }
      hit += std::popcount(kept & sample_at[w]);
      break;
    }
  }
  return hit;
}

bool bad_on_side(const DegreeOrderingView& view, const VertexSet& sample,
                 const std::vector<std::uint64_t>& sample_at, int x, bool in_side) {
  const auto& list = in_side ? view.ahead[x] : view.behind[x];
  const auto& own = in_side ? view.out_at[x] : view.in_at[x];
  int sampled_prefix = 0;
  for (std::size_t idx = 0; idx < list.size(); ++idx) {
    const int i = static_cast<int>(idx) + 1;
    const int z = list[idx];
    if (sample.contains(z)) ++sampled_prefix;
    if (10 * sampled_prefix > i) return true;
    const auto& other = in_side ? view.in_at[z] : view.out_at[z];
    if (20 * sampled_in_window(own, other, sample_at, i / 2) >= i) return true;
  }
  return false;
}

}  // namespace

DegreeOrderingView degree_ordering(const Tournament& t) {
  const int n = t.size();
  DegreeOrderingView view;
  view.n = n;

  std::vector<int> out_deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out_deg[static_cast<std::size_t>(v)] = t.out_degree(v);

  view.order.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) view.order[static_cast<std::size_t>(v)] = v;
  std::sort(view.order.begin(), view.order.end(), [&](int u, int v) {
    const int du = out_deg[static_cast<std::size_t>(u)];
    const int dv = out_deg[static_cast<std::size_t>(v)];
    if (du != dv) return du > dv;
    return u < v;
  });
  view.pos.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) view.pos[static_cast<std::size_t>(view.order[p])] = p;

  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  view.out_at.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
  view.in_at.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
  for (int v = 0; v < n; ++v) {
    auto& row_out = view.out_at[static_cast<std::size_t>(v)];
    auto& row_in = view.in_at[static_cast<std::size_t>(v)];
    for (int p = 0; p < n; ++p) {
      const int u = view.order[static_cast<std::size_t>(p)];
      if (u == v) continue;
      if (t.edge(v, u))
        row_out[p >> 6] |= std::uint64_t{1} << (p & 63);
      else
        row_in[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }

  view.ahead.resize(static_cast<std::size_t>(n));
  view.behind.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const int px = view.pos[static_cast<std::size_t>(x)];
    std::vector<int> in_later;
    std::vector<int> out_earlier;
    for (int p = px + 1; p < n; ++p) {
      const int v = view.order[static_cast<std::size_t>(p)];
      if (t.edge(v, x)) in_later.push_back(v);
    }
    for (int p = 0; p < px; ++p) {
      const int v = view.order[static_cast<std::size_t>(p)];
      if (t.edge(x, v)) out_earlier.push_back(v);
    }

    VertexSet in_set(n);
    for (int v : in_later) in_set.insert(v);
    VertexSet out_set(n);
    for (int v : out_earlier) out_set.insert(v);

    std::vector<std::pair<int, int>> keyed;
    keyed.reserve(in_later.size());
    for (int v : in_later) keyed.emplace_back(t.out_degree_within(v, in_set), v);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) in_later[i] = keyed[i].second;

    keyed.clear();
    keyed.reserve(out_earlier.size());
    for (int v : out_earlier) keyed.emplace_back(t.in_degree_within(v, out_set), v);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) out_earlier[i] = keyed[i].second;

    view.ahead[static_cast<std::size_t>(x)] = std::move(in_later);
    view.behind[static_cast<std::size_t>(x)] = std::move(out_earlier);
  }
  return view;
}

bool is_in_bad(const DegreeOrderingView& view, const VertexSet& sample, int x) {
  if (!sample.contains(x)) return false;
  return bad_on_side(view, sample, position_mask(view, sample), x, true);
}

bool is_out_bad(const DegreeOrderingView& view, const VertexSet& sample, int x) {
  if (!sample.contains(x)) return false;
  return bad_on_side(view, sample, position_mask(view, sample), x, false);
}

VertexSet filter_good(const DegreeOrderingView& view, const VertexSet& sample) {
  VertexSet good(sample.universe());
  const auto sample_at = position_mask(view, sample);
  sample.for_each([&](int x) {
    if (!bad_on_side(view, sample, sample_at, x, true) &&
        !bad_on_side(view, sample, sample_at, x, false))
      good.insert(x);
  });
  return good;
}

BackwardEdgeInstance build_pairing_instance(const Tournament& t,
                                            const DegreeOrderingView& view,
                                            const VertexSet& branch_set) {
  const int n = t.size();
  BackwardEdgeInstance out;

  out.branch_order = branch_set.to_vector();
  std::sort(out.branch_order.begin(), out.branch_order.end(), [&](int u, int v) {
    return view.pos[static_cast<std::size_t>(u)] < view.pos[static_cast<std::size_t>(v)];
  });

  std::vector<int> pool_index(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (branch_set.contains(v)) continue;
    pool_index[static_cast<std::size_t>(v)] = static_cast<int>(out.pool.size());
    out.pool.push_back(v);
  }

  std::map<std::pair<int, int>, int> edge_index;  // (earlier, later) -> A index
  const std::size_t m = out.branch_order.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const int u = out.branch_order[i];
      const int w = out.branch_order[j];
      if (t.edge(u, w)) continue;
      std::vector<int> reps;
      for (int z : out.pool)
        if (t.edge(u, z) && t.edge(z, w))
          reps.push_back(pool_index[static_cast<std::size_t>(z)]);
      edge_index[{u, w}] = static_cast<int>(out.edges.size());
      out.edges.push_back({u, w});
      out.instance.adj.push_back(std::move(reps));
    }
  }
  out.instance.a_size = static_cast<int>(out.edges.size());
  out.instance.b_size = static_cast<int>(out.pool.size());

  // Midpoint supply promised by the badness filter: the j-th backward edge
  // at a good endpoint, walking that endpoint's list, has at least 4j
  // representatives. Only claimed where the endpoint really is good.
  auto check_supply = [&](int x, const std::vector<int>& list, bool x_is_earlier) {
    int j = 0;
    for (int z : list) {
      if (!branch_set.contains(z)) continue;
      ++j;
      const auto key = x_is_earlier ? std::pair<int, int>{x, z} : std::pair<int, int>{z, x};
      const auto it = edge_index.find(key);
      if (it == edge_index.end())
        throw InternalConsistencyError(
            "every sampled list entry yields a backward edge",
            "pair (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") missing from the instance");
      const auto have = static_cast<int>(out.instance.adj[static_cast<std::size_t>(it->second)].size());
      if (have < 4 * j)
        throw InternalConsistencyError(
            "|R(e)| >= 4j at good endpoints",
            "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                ") has " + std::to_string(have) + " representatives, needs " +
                std::to_string(4 * j));
    }
  };
  for (int x : out.branch_order) {
    if (!is_in_bad(view, branch_set, x)) check_supply(x, view.ahead[static_cast<std::size_t>(x)], true);
    if (!is_out_bad(view, branch_set, x)) check_supply(x, view.behind[static_cast<std::size_t>(x)], false);
  }

  // One hyperedge per branch and direction: first the edges it heads (its
  // in-edges among backward arcs), then the edges it tails. Empty sides
  // constrain nothing and are dropped.
  for (int x : out.branch_order) {
    std::vector<int> heads;
    std::vector<int> tails;
    for (int e = 0; e < out.instance.a_size; ++e) {
      if (out.edges[static_cast<std::size_t>(e)].from == x) heads.push_back(e);
      if (out.edges[static_cast<std::size_t>(e)].to == x) tails.push_back(e);
    }
    if (!heads.empty()) out.instance.hyperedges.push_back(std::move(heads));
    if (!tails.empty()) out.instance.hyperedges.push_back(std::move(tails));
  }
  return out;
}

Immersion assemble_immersion(const Tournament& t, const BackwardEdgeInstance& inst,
                             const Pairing& pairing) {
  if (pairing.partner.size() != static_cast<std::size_t>(inst.instance.a_size))
    throw InternalConsistencyError("pairing covers every backward edge",
                                   "partner table size " +
                                       std::to_string(pairing.partner.size()) +
                                       " for " + std::to_string(inst.instance.a_size) +
                                       " edges");

  Immersion im;
  im.pattern = PatternKind::transitive_tournament;
  im.k = static_cast<int>(inst.branch_order.size());
  im.branches = inst.branch_order;

  std::map<std::pair<int, int>, int> edge_index;
  for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
    edge_index[{inst.edges[static_cast<std::size_t>(e)].from,
                inst.edges[static_cast<std::size_t>(e)].to}] = e;

  const std::size_t m = inst.branch_order.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const int u = inst.branch_order[i];
      const int w = inst.branch_order[j];
      if (t.edge(u, w)) {
        im.paths[{u, w}] = {u, w};
        continue;
      }
      const int e = edge_index.at({u, w});
      const int b = pairing.partner[static_cast<std::size_t>(e)];
      if (b < 0 || b >= static_cast<int>(inst.pool.size()))
        throw InternalConsistencyError("pairing picks a pooled representative",
                                       "edge " + std::to_string(e) + " paired to " +
                                           std::to_string(b));
      im.paths[{u, w}] = {u, inst.pool[static_cast<std::size_t>(b)], w};
    }
  }

  if (const auto bad = verify_immersion(t, im, 2, true))
    throw InternalConsistencyError("assembled paths form a strong 1-immersion",
                                   bad->describe());
  return im;
}

std::vector<int> greedy_transitive_chain(const Tournament& t) {
  const int n = t.size();
  std::vector<int> chain;
  VertexSet active = VertexSet::all(n);
  while (!active.empty()) {
    int best = -1;
    int best_deg = -1;
    active.for_each([&](int v) {
      const int d = t.out_degree_within(v, active);
      if (d > best_deg) {
        best_deg = d;
        best = v;
      }
    });
    chain.push_back(best);
    VertexSet next(n);
    active.for_each([&](int v) {
      if (v != best && t.edge(best, v)) next.insert(v);
    });
    active = next;
  }
  return chain;
}

TtResult find_tt_immersion(const Tournament& t, int k, const TtConfig& cfg) {
  if (k < 1) throw std::invalid_argument("find_tt_immersion: k must be at least 1");

  TtResult result;
  const int n = t.size();
  if (k > n) return result;

  const DegreeOrderingView view = degree_ordering(t);

  std::vector<double> grid;
  if (cfg.sample_probability)
    grid = {*cfg.sample_probability};
  else if (cfg.mode == TtMode::faithful)
    grid = {faithful_probability()};
  else
    grid = {0.005, 0.01, 0.02, 0.04, 0.08};
  const int rounds = cfg.mode == TtMode::faithful ? 1 : std::max(1, cfg.retries);

  VertexSet best(n);
  std::uint64_t stream = 0;
  for (int round = 0; round < rounds && best.count() < k; ++round) {
    for (double p : grid) {
      Rng rng(mix_seed(cfg.seed, stream++));
      VertexSet sample(n);
      for (int v = 0; v < n; ++v)
        if (rng.coin(p)) sample.insert(v);
      const VertexSet good = filter_good(view, sample);
      if (good.count() > best.count()) best = good;
      if (best.count() >= k) break;
    }
  }
  result.best_good = best.count();

  if (result.best_good >= k) {
    std::vector<int> members = best.to_vector();
    std::sort(members.begin(), members.end(), [&](int u, int v) {
      return view.pos[static_cast<std::size_t>(u)] < view.pos[static_cast<std::size_t>(v)];
    });
    members.resize(static_cast<std::size_t>(k));
    VertexSet branch(n);
    for (int v : members) branch.insert(v);

    // Badness never appears by shrinking the sample, so the truncated set
    // still satisfies the pairing hypothesis.
    const BackwardEdgeInstance inst = build_pairing_instance(t, view, branch);
    if (const auto violation = check_hypothesis(inst.instance))
      throw InternalConsistencyError("good branch sets meet the pairing hypothesis",
                                     violation->describe());
    const GreedyPairingResult paired = greedy_pairing(inst.instance);
    if (!paired.pairing)
      throw InternalConsistencyError(
          "greedy pairing completes on good branch sets",
          "stuck at edge " + std::to_string(paired.stuck_element));
    result.immersion = assemble_immersion(t, inst, *paired.pairing);
    log_line(2, "tt: sampled branch set of " + std::to_string(k) + " via " +
                    std::to_string(result.best_good) + " good vertices");
    return result;
  }

  if (cfg.mode == TtMode::adaptive) {
    std::vector<int> chain = greedy_transitive_chain(t);
    result.fallback_chain = static_cast<int>(chain.size());
    if (static_cast<int>(chain.size()) >= k) {
      chain.resize(static_cast<std::size_t>(k));
      Immersion im;
      im.pattern = PatternKind::transitive_tournament;
      im.k = k;
      im.branches = chain;
      for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = i + 1; j < chain.size(); ++j)
          im.paths[{chain[i], chain[j]}] = {chain[i], chain[j]};
      if (const auto bad = verify_immersion(t, im, 2, true))
        throw InternalConsistencyError("greedy chain spans a transitive subtournament",
                                       bad->describe());
      result.immersion = std::move(im);
      result.via_fallback = true;
      log_line(2, "tt: fallback chain of length " + std::to_string(result.fallback_chain));
    }
  }
  return result;
}

double faithful_probability() {
  // 1 / (10 e 4^20); makes the badness bound come out to 4p/5.
  return 1.0 / (10.0 * std::numbers::e * std::pow(4.0, 20.0));
}

double badness_probability_bound(double p) {
  if (!(p > 0.0)) throw std::domain_error("badness_probability_bound: p must be positive");
  const double base = 10.0 * std::numbers::e * p;
  if (!(base < 1.0))
    throw std::domain_error("badness_probability_bound: series diverges, need 10ep < 1");
  const double q = std::pow(base, 1.0 / 20.0);
  return 2.0 * p * (q * q / (1.0 - q * q) + q / (1.0 - q));
}

double chernoff_bound(double beta, double p, double n) {
  if (!(beta > 1.0)) throw std::domain_error("chernoff_bound: beta must exceed 1");
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("chernoff_bound: p must be in (0,1)");
  if (!(n > 0.0)) throw std::domain_error("chernoff_bound: n must be positive");
  const double log_factor = (beta - 1.0) - beta * std::log(beta);
  return std::exp(p * n * log_factor);
}

}  // namespace timm
