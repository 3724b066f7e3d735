#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "timm/vertex_set.hpp"

namespace timm {

// Complete orientation of K_n: exactly one of (u,v), (v,u) is an edge for
// every unordered pair, no self loops. Immutable once built; row u of the
// bit matrix holds the out-neighbourhood of u.
class Tournament {
 public:
  // orient(u, v) is called once per pair u < v; true means edge u -> v.
  template <class Orient>
  static Tournament build(int n, Orient&& orient) {
    Tournament t(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (orient(u, v))
          t.set_edge(u, v);
        else
          t.set_edge(v, u);
    return t;
  }

  int size() const { return n_; }

  bool edge(int u, int v) const {
    return (bits_[row_index(u) + (static_cast<std::size_t>(v) >> 6)] >> (v & 63)) & 1u;
  }

  int out_degree(int v) const;
  int in_degree(int v) const { return n_ - 1 - out_degree(v); }

  // Degree restricted to `within`; v itself never counts (no self loops).
  int out_degree_within(int v, const VertexSet& within) const;
  int in_degree_within(int v, const VertexSet& within) const;

  VertexSet out_neighbours(int v) const;
  VertexSet in_neighbours(int v) const;

  int min_out_degree() const;

  bool operator==(const Tournament&) const = default;

 private:
  explicit Tournament(int n)
      : n_(n),
        words_per_row_((n + 63) / 64),
        bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>((n + 63) / 64), 0) {}

  std::size_t row_index(int u) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(words_per_row_);
  }

  void set_edge(int u, int v) {
    bits_[row_index(u) + (static_cast<std::size_t>(v) >> 6)] |= 1ull << (v & 63);
  }

  int n_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Subtournament induced by `members`, relabelled to 0..|members|-1 in
// ascending original id order. `back_map[i]` is the original id of i.
Tournament induced_subtournament(const Tournament& t, const VertexSet& members,
                                 std::vector<int>* back_map);

void check_vertex(const Tournament& t, int v);  // throws std::out_of_range

}  // namespace timm
