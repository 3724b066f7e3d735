#pragma once

#include <optional>
#include <string>
#include <vector>

namespace timm {

// Bipartite conflict structure: each A-element must be matched to one of
// its B-neighbours so that elements sharing a hyperedge get distinct
// partners. A-elements may appear in at most two hyperedges.
struct PairingInstance {
  int a_size = 0;
  int b_size = 0;
  std::vector<std::vector<int>> adj;        // A-element -> B-neighbours, ascending
  std::vector<std::vector<int>> hyperedges;  // subsets of A-elements
};

struct Pairing {
  std::vector<int> partner;  // A-element -> chosen B-element
};

struct HypothesisViolation {
  enum class Kind { isolated_element, membership_count, degree_condition };
  Kind kind;
  int element = -1;    // isolated_element / membership_count
  int hyperedge = -1;  // degree_condition
  int level = -1;      // the i whose 2^(i-1) cap is exceeded
  std::string describe() const;
};

// Degree-vs-hyperedge hypothesis: no isolated A-element, no element in more
// than two hyperedges, and for every hyperedge F and every positive
// i <= floor(log2 |F|), at most 2^(i-1) members of F have degree <= 2^(i+1).
// Returns the first violation in instance order, or nullopt.
std::optional<HypothesisViolation> check_hypothesis(const PairingInstance& inst);

// Partition of A by degree: bucket 0 holds degree <= 4, bucket i >= 1 holds
// 2^(i+1) < degree <= 2^(i+2). Elements listed ascending within buckets.
std::vector<std::vector<int>> degree_buckets(const PairingInstance& inst);

struct PairingViolation {
  enum class Kind { unmatched, partner_not_neighbour, clash };
  Kind kind;
  int element = -1;
  int other = -1;      // clash partner
  int hyperedge = -1;  // clash location
  std::string describe() const;
};

// Totality, adjacency, and injectivity within every hyperedge.
std::optional<PairingViolation> verify_pairing(const PairingInstance& inst,
                                               const Pairing& pairing);

struct GreedyPairingResult {
  std::optional<Pairing> pairing;  // set on success, verified
  int stuck_element = -1;          // element with no conflict-free neighbour left
};

// Buckets in ascending order, elements ascending within a bucket, always
// the lowest-indexed B-neighbour not already taken inside a shared
// hyperedge. Succeeds on every instance passing check_hypothesis; on other
// instances it either succeeds or names the stuck element. Every returned
// pairing has passed verify_pairing.
GreedyPairingResult greedy_pairing(const PairingInstance& inst);

}  // namespace timm
