#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace elimdeg {

// Fixed-universe bitset over local vertex indices 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet full(int n) {
    VertexSet s(n);
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }

  int universe() const { return n_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t b = 0; b < words_.size(); ++b) {
      std::uint64_t w = words_[b];
      while (w) {
        int t = std::countr_zero(w);
        f(static_cast<int>(b * 64 + t));
        w &= w - 1;
      }
    }
  }

  int first() const {
    for (std::size_t b = 0; b < words_.size(); ++b)
      if (words_[b]) return static_cast<int>(b * 64 + std::countr_zero(words_[b]));
    return -1;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t b = 0; b < words_.size(); ++b) words_[b] |= o.words_[b];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t b = 0; b < words_.size(); ++b) words_[b] &= o.words_[b];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t b = 0; b < words_.size(); ++b) words_[b] &= ~o.words_[b];
    return *this;
  }
  bool intersects(const VertexSet& o) const {
    for (std::size_t b = 0; b < words_.size(); ++b)
      if (words_[b] & o.words_[b]) return true;
    return false;
  }

  bool operator==(const VertexSet&) const = default;
  bool operator<(const VertexSet& o) const { return words_ < o.words_; }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull + (w ^ (w >> 29));
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace elimdeg
