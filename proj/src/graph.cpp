#include "grips/graph.hpp"

#include <bit>
#include <deque>

#include "grips/errors.hpp"

namespace grips {

int Bits::count() const {
  int c = 0;
  for (std::uint64_t v : w_) c += std::popcount(v);
  return c;
}

bool Bits::any() const {
  for (std::uint64_t v : w_)
    if (v) return true;
  return false;
}

bool Bits::subset_of(const Bits& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

bool Bits::intersects(const Bits& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & o.w_[i]) return true;
  return false;
}

Bits& Bits::operator&=(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

Bits& Bits::operator|=(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

int Bits::next(int from) const {
  if (from >= n_) return -1;
  int word = from >> 6;
  std::uint64_t cur = w_[word] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (cur) {
      int pos = (word << 6) + std::countr_zero(cur);
      return pos < n_ ? pos : -1;
    }
    if (++word >= static_cast<int>(w_.size())) return -1;
    cur = w_[word];
  }
}

std::vector<int> Bits::to_vector() const {
  std::vector<int> out;
  for (int i = next(0); i != -1; i = next(i + 1)) out.push_back(i);
  return out;
}

Graph::Graph(int n) : n_(n), adj_(n, Bits(n)) {}

void Graph::add_edge(int a, int b) {
  if (a == b) throw input_error("graph edges must join distinct vertices");
  if (a < 0 || b < 0 || a >= n_ || b >= n_)
    throw input_error("graph edge endpoint out of range");
  adj_[a].set(b);
  adj_[b].set(a);
}

long long Graph::edge_count() const {
  long long twice = 0;
  for (int v = 0; v < n_; ++v) twice += degree(v);
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = adj_[a].next(a + 1); b != -1; b = adj_[a].next(b + 1))
      out.emplace_back(a, b);
  return out;
}

Graph Graph::induced(const std::vector<int>& verts) const {
  Graph g(static_cast<int>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (has_edge(verts[i], verts[j]))
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

std::vector<int> Graph::bfs_distances(int src) const {
  std::vector<int> dist(n_, -1);
  dist[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u = adj_[v].next(0); u != -1; u = adj_[v].next(u + 1))
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

std::vector<std::vector<int>> Graph::all_pairs_distances() const {
  std::vector<std::vector<int>> d;
  d.reserve(n_);
  for (int v = 0; v < n_; ++v) d.push_back(bfs_distances(v));
  return d;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  auto d = bfs_distances(0);
  for (int v = 0; v < n_; ++v)
    if (d[v] == -1) return false;
  return true;
}

}  // namespace grips
