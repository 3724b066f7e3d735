#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace timm {

// Subset of the vertex range [0, universe) as a packed bit vector.
// Value semantics; set algebra requires equal universes.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe)
      : n_(universe), words_(static_cast<std::size_t>((universe + 63) / 64), 0) {}

  static VertexSet all(int universe) {
    VertexSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  int universe() const { return n_; }
  bool empty() const { return count() == 0; }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool contains(int v) const {
    return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void insert(int v) { words_[static_cast<std::size_t>(v) >> 6] |= 1ull << (v & 63); }
  void erase(int v) { words_[static_cast<std::size_t>(v) >> 6] &= ~(1ull << (v & 63)); }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool operator==(const VertexSet&) const = default;

  // Ascending vertex ids.
  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        int b = std::countr_zero(w);
        f(static_cast<int>(i * 64) + b);
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace timm
