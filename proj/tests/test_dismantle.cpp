#include "grips/dismantle.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"
#include "grips/errors.hpp"
#include "grips/graph.hpp"
#include "grips/rng.hpp"

using namespace grips;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Brute-force cop-win oracle: try every dominated-vertex removal, all
// orders, with memoization on the surviving vertex set.
bool brute_dismantlable(const Graph& g, std::vector<int> verts,
                        std::map<std::vector<int>, bool>& memo) {
  if (verts.size() == 1) return true;
  auto it = memo.find(verts);
  if (it != memo.end()) return it->second;
  Graph h = g.induced(verts);
  bool ok = false;
  for (int a = 0; a < h.size() && !ok; ++a) {
    bool dominated = false;
    for (int z = 0; z < h.size() && !dominated; ++z) {
      if (z == a || !h.has_edge(a, z)) continue;
      Bits closed = h.neighbors(z);
      closed.set(z);
      if (h.neighbors(a).subset_of(closed)) dominated = true;
    }
    if (!dominated) continue;
    std::vector<int> rest;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (static_cast<int>(i) != a) rest.push_back(verts[i]);
    ok = brute_dismantlable(g, rest, memo);
  }
  memo.emplace(std::move(verts), ok);
  return ok;
}

bool brute_dismantlable(const Graph& g) {
  std::vector<int> all(g.size());
  for (int i = 0; i < g.size(); ++i) all[i] = i;
  std::map<std::vector<int>, bool> memo;
  return brute_dismantlable(g, all, memo);
}

Graph random_graph(Rng& rng, int n, double p) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(p)) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("dominated vertices fixtures") {
  auto dom = dominated_vertices(path(3));
  CHECK(dom == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}});

  CHECK(dominated_vertices(cycle(4)).empty());
  CHECK(dominated_vertices(cycle(5)).empty());

  // complete graph: every vertex dominated by every neighbour
  CHECK(dominated_vertices(complete(4)).size() == 12);
}

TEST_CASE("vertex dismantling fixtures") {
  CHECK(is_dismantlable(path(7)).dismantlable);

  // random trees are dismantlable (leaves are dominated)
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + rng.below(9);
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, rng.below(v));
    CHECK(is_dismantlable(g).dismantlable);
  }

  for (int n : {4, 5, 6}) {
    DismantleResult res = is_dismantlable(cycle(n));
    CHECK_FALSE(res.dismantlable);
    // stuck residual is the whole cycle
    CHECK(static_cast<int>(res.seq.residual_vertices.size()) == n);
  }

  // distance-3 power of a path: 0..12, edges between ids within 3
  Graph power(13);
  for (int i = 0; i < 13; ++i)
    for (int j = i + 1; j <= i + 3 && j < 13; ++j) power.add_edge(i, j);
  DismantleResult res = is_dismantlable(power);
  CHECK(res.dismantlable);
  CHECK(res.seq.steps.front().removed_vertex == 0);
  auto dom = dominated_vertices(power);
  CHECK(std::find(dom.begin(), dom.end(), std::pair<int, int>{0, 3}) !=
        dom.end());
  CHECK(replay_sequence(power, res.seq));

  CHECK_THROWS_AS(is_dismantlable(Graph(0)), input_error);
}

TEST_CASE("greedy agrees with the all-orders oracle on random graphs") {
  Rng rng(2026);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(rng, 2 + rng.below(7), 0.2 + 0.06 * rng.below(9));
    bool greedy = is_dismantlable(g).dismantlable;
    CHECK(greedy == brute_dismantlable(g));
  }
}

TEST_CASE("elimination sequences replay and reject tampering") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(rng, 3 + rng.below(8), 0.5);
    DismantleResult res = is_dismantlable(g);
    CHECK(replay_sequence(g, res.seq));
    if (!res.seq.steps.empty()) {
      EliminationSequence bad = res.seq;
      bad.steps.front().witness = bad.steps.front().removed_vertex;
      CHECK_FALSE(replay_sequence(g, bad));
    }
  }
}

TEST_CASE("dominated edges fixtures") {
  // K3: each edge dominated by the opposite vertex
  auto k3 = dominated_edges(complete(3));
  CHECK(k3 == std::vector<std::pair<std::pair<int, int>, int>>{
                  {{0, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 0}});

  // C4: edges have no common neighbours at all
  CHECK(dominated_edges(cycle(4)).empty());

  // K4 minus the edge (0,1): each edge into the removed pair is dominated
  // by the opposite degree-3 vertex; the (2,3) edge has common neighbours
  // 0 and 1 which are non-adjacent, so no witness exists for it.
  Graph g(4);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  auto dom = dominated_edges(g);
  CHECK(dom == std::vector<std::pair<std::pair<int, int>, int>>{
                   {{0, 2}, 3}, {{0, 3}, 2}, {{1, 2}, 3}, {{1, 3}, 2}});
}

TEST_CASE("edge dismantling search") {
  EdgeDismantleResult k3 = edge_dismantling_sequence(complete(3));
  CHECK(k3.status == SearchStatus::found);
  CHECK(replay_sequence(complete(3), k3.seq));

  EdgeDismantleResult c4 = edge_dismantling_sequence(cycle(4));
  CHECK(c4.status == SearchStatus::not_found);

  // vertex-dismantlable implies found
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = random_graph(rng, 3 + rng.below(6), 0.55);
    if (!is_dismantlable(g).dismantlable) continue;
    EdgeDismantleResult res = edge_dismantling_sequence(g);
    CHECK(res.status == SearchStatus::found);
    CHECK(replay_sequence(g, res.seq));
  }

  // zero budget reports exhaustion rather than a verdict
  EdgeDismantleResult starved = edge_dismantling_sequence(cycle(5), 0);
  CHECK(starved.status == SearchStatus::budget_exhausted);
}

TEST_CASE("a chorded five-cycle defeats both vertex and edge elimination") {
  // C5 plus the chord 0-2.  The only dominated vertex is 1 (by 0 or 2) and
  // removing it leaves C4; the only dominated edges border the triangle and
  // removing any leaves C5 or a pendant into C4.  Every line of attack dies,
  // which matches the circle homotopy type of its clique complex.
  Graph g = cycle(5);
  g.add_edge(0, 2);
  CHECK_FALSE(is_dismantlable(g).dismantlable);
  CHECK_FALSE(brute_dismantlable(g));
  CHECK(edge_dismantling_sequence(g).status == SearchStatus::not_found);
}
