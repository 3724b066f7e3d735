#include "timm/pairing.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "timm/errors.hpp"

namespace timm {

namespace {

int bucket_of(int degree) {
  // bucket 0: degree <= 4; bucket j >= 1: 2^(j+1) < degree <= 2^(j+2)
  if (degree <= 4) return 0;
  return std::bit_width(static_cast<unsigned>(degree - 1)) - 2;
}

std::vector<std::vector<int>> memberships(const PairingInstance& inst) {
  std::vector<std::vector<int>> of(static_cast<std::size_t>(inst.a_size));
  for (std::size_t h = 0; h < inst.hyperedges.size(); ++h)
    for (int a : inst.hyperedges[h]) of[static_cast<std::size_t>(a)].push_back(static_cast<int>(h));
  return of;
}

}  // namespace

std::string HypothesisViolation::describe() const {
  switch (kind) {
    case Kind::isolated_element:
      return "element " + std::to_string(element) + " has no neighbours";
    case Kind::membership_count:
      return "element " + std::to_string(element) + " lies in more than two hyperedges";
    case Kind::degree_condition:
      return "hyperedge " + std::to_string(hyperedge) + " exceeds the 2^(i-1) cap at i=" +
             std::to_string(level);
  }
  return {};
}

std::string PairingViolation::describe() const {
  switch (kind) {
    case Kind::unmatched:
      return "element " + std::to_string(element) + " unmatched";
    case Kind::partner_not_neighbour:
      return "element " + std::to_string(element) + " matched outside its neighbourhood";
    case Kind::clash:
      return "elements " + std::to_string(other) + " and " + std::to_string(element) +
             " share a partner in hyperedge " + std::to_string(hyperedge);
  }
  return {};
}

std::optional<HypothesisViolation> check_hypothesis(const PairingInstance& inst) {
  for (int a = 0; a < inst.a_size; ++a)
    if (inst.adj[static_cast<std::size_t>(a)].empty())
      return HypothesisViolation{HypothesisViolation::Kind::isolated_element, a, -1, -1};

  std::vector<int> count(static_cast<std::size_t>(inst.a_size), 0);
  for (const auto& f : inst.hyperedges)
    for (int a : f) ++count[static_cast<std::size_t>(a)];
  for (int a = 0; a < inst.a_size; ++a)
    if (count[static_cast<std::size_t>(a)] > 2)
      return HypothesisViolation{HypothesisViolation::Kind::membership_count, a, -1, -1};

  for (std::size_t h = 0; h < inst.hyperedges.size(); ++h) {
    const auto& f = inst.hyperedges[h];
    if (f.size() < 2) continue;  // floor(log2 1) = 0, nothing to check
    int levels = std::bit_width(f.size()) - 1;
    for (int i = 1; i <= levels; ++i) {
      long long cap = 1LL << (i - 1);
      long long threshold = 1LL << (i + 1);
      long long low = 0;
      for (int a : f)
        if (static_cast<long long>(inst.adj[static_cast<std::size_t>(a)].size()) <= threshold)
          ++low;
      if (low > cap)
        return HypothesisViolation{HypothesisViolation::Kind::degree_condition, -1,
                                   static_cast<int>(h), i};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> degree_buckets(const PairingInstance& inst) {
  std::vector<std::vector<int>> buckets;
  for (int a = 0; a < inst.a_size; ++a) {
    int b = bucket_of(static_cast<int>(inst.adj[static_cast<std::size_t>(a)].size()));
    if (static_cast<std::size_t>(b) >= buckets.size())
      buckets.resize(static_cast<std::size_t>(b) + 1);
    buckets[static_cast<std::size_t>(b)].push_back(a);
  }
  return buckets;
}

std::optional<PairingViolation> verify_pairing(const PairingInstance& inst,
                                               const Pairing& pairing) {
  for (int a = 0; a < inst.a_size; ++a) {
    if (static_cast<std::size_t>(a) >= pairing.partner.size() ||
        pairing.partner[static_cast<std::size_t>(a)] < 0)
      return PairingViolation{PairingViolation::Kind::unmatched, a, -1, -1};
    const auto& nb = inst.adj[static_cast<std::size_t>(a)];
    if (!std::binary_search(nb.begin(), nb.end(), pairing.partner[static_cast<std::size_t>(a)]))
      return PairingViolation{PairingViolation::Kind::partner_not_neighbour, a, -1, -1};
  }
  for (std::size_t h = 0; h < inst.hyperedges.size(); ++h) {
    std::unordered_set<int> seen;
    int holder = -1;
    for (int a : inst.hyperedges[h]) {
      int b = pairing.partner[static_cast<std::size_t>(a)];
      if (!seen.insert(b).second) {
        for (int x : inst.hyperedges[h])
          if (x != a && pairing.partner[static_cast<std::size_t>(x)] == b) {
            holder = x;
            break;
          }
        return PairingViolation{PairingViolation::Kind::clash, a, holder,
                                static_cast<int>(h)};
      }
    }
  }
  return std::nullopt;
}

GreedyPairingResult greedy_pairing(const PairingInstance& inst) {
  auto of = memberships(inst);
  std::vector<std::unordered_set<int>> taken(inst.hyperedges.size());
  Pairing pairing;
  pairing.partner.assign(static_cast<std::size_t>(inst.a_size), -1);

  for (const auto& bucket : degree_buckets(inst)) {
    for (int a : bucket) {
      int chosen = -1;
      for (int b : inst.adj[static_cast<std::size_t>(a)]) {
        bool clash = false;
        for (int h : of[static_cast<std::size_t>(a)])
          if (taken[static_cast<std::size_t>(h)].count(b)) {
            clash = true;
            break;
          }
        if (!clash) {
          chosen = b;
          break;
        }
      }
      if (chosen < 0) return GreedyPairingResult{std::nullopt, a};
      pairing.partner[static_cast<std::size_t>(a)] = chosen;
      for (int h : of[static_cast<std::size_t>(a)])
        taken[static_cast<std::size_t>(h)].insert(chosen);
    }
  }
  if (auto bad = verify_pairing(inst, pairing))
    throw InternalConsistencyError("greedy pairing postcondition", bad->describe());
  return GreedyPairingResult{std::move(pairing), -1};
}

}  // namespace timm
