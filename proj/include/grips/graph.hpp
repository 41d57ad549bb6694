#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace grips {

// Dynamic fixed-size bitset sized at construction.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int universe_size() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const;
  bool any() const;
  bool subset_of(const Bits& o) const;
  bool intersects(const Bits& o) const;

  Bits& operator&=(const Bits& o);
  Bits& operator|=(const Bits& o);

  // First set bit at position >= from; -1 when none.
  int next(int from) const;
  std::vector<int> to_vector() const;

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Simple undirected graph with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int size() const { return n_; }
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const { return adj_[a].test(b); }
  const Bits& neighbors(int a) const { return adj_[a]; }
  int degree(int a) const { return adj_[a].count(); }

  long long edge_count() const;
  // Edges as (a, b) with a < b, sorted.
  std::vector<std::pair<int, int>> edges() const;

  // Subgraph induced on the given vertices (kept in the given order);
  // new vertex i corresponds to verts[i].
  Graph induced(const std::vector<int>& verts) const;

  // BFS distances from src; -1 for unreachable vertices.
  std::vector<int> bfs_distances(int src) const;
  std::vector<std::vector<int>> all_pairs_distances() const;
  bool connected() const;

 private:
  int n_ = 0;
  std::vector<Bits> adj_;
};

}  // namespace grips
