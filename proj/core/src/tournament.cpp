#include "timm/tournament.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace timm {

void check_vertex(const Tournament& t, int v) {
  if (v < 0 || v >= t.size())
    throw std::out_of_range("vertex " + std::to_string(v) + " outside [0, " +
                            std::to_string(t.size()) + ")");
}

int Tournament::out_degree(int v) const {
  check_vertex(*this, v);
  int c = 0;
  std::size_t base = row_index(v);
  for (int w = 0; w < words_per_row_; ++w) c += std::popcount(bits_[base + w]);
  return c;
}

int Tournament::out_degree_within(int v, const VertexSet& within) const {
  check_vertex(*this, v);
  int c = 0;
  std::size_t base = row_index(v);
  const auto& ww = within.words();
  for (std::size_t w = 0; w < ww.size(); ++w) c += std::popcount(bits_[base + w] & ww[w]);
  return c;
}

int Tournament::in_degree_within(int v, const VertexSet& within) const {
  check_vertex(*this, v);
  int members = within.count() - (within.contains(v) ? 1 : 0);
  return members - out_degree_within(v, within);
}

VertexSet Tournament::out_neighbours(int v) const {
  check_vertex(*this, v);
  VertexSet s(n_);
  for (int w = 0; w < n_; ++w)
    if (edge(v, w)) s.insert(w);
  return s;
}

VertexSet Tournament::in_neighbours(int v) const {
  check_vertex(*this, v);
  VertexSet s(n_);
  for (int w = 0; w < n_; ++w)
    if (edge(w, v)) s.insert(w);
  return s;
}

int Tournament::min_out_degree() const {
  int best = n_;  // n_ = 0 gives 0-ish sentinel; callers guard empty inputs
  for (int v = 0; v < n_; ++v) {
    int d = out_degree(v);
    if (d < best) best = d;
  }
  return best;
}

Tournament induced_subtournament(const Tournament& t, const VertexSet& members,
                                 std::vector<int>* back_map) {
  std::vector<int> ids = members.to_vector();
  if (back_map) *back_map = ids;
  return Tournament::build(static_cast<int>(ids.size()), [&](int u, int v) {
    return t.edge(ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(v)]);
  });
}

}  // namespace timm
