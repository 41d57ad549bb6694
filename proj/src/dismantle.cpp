#include "grips/dismantle.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "grips/errors.hpp"

namespace grips {

namespace {

// Mutable residual: adjacency rows plus an alive mask, vertices keep their
// original ids throughout.
struct Residual {
  std::vector<Bits> adj;
  Bits alive;

  explicit Residual(const Graph& g) : alive(g.size()) {
    adj.reserve(g.size());
    for (int v = 0; v < g.size(); ++v) {
      adj.push_back(g.neighbors(v));
      alive.set(v);
    }
  }

  int alive_count() const { return alive.count(); }

  void drop_vertex(int v) {
    for (int u = adj[v].next(0); u != -1; u = adj[v].next(u + 1))
      adj[u].reset(v);
    adj[v] = Bits(alive.universe_size());
    alive.reset(v);
  }

  void drop_edge(int a, int b) {
    adj[a].reset(b);
    adj[b].reset(a);
  }

  bool vertex_dominated(int a, int z) const {
    if (!adj[a].test(z)) return false;
    Bits closed = adj[z];
    closed.set(z);
    return adj[a].subset_of(closed);
  }

  bool edge_dominated(int a, int b, int z) const {
    if (!adj[a].test(z) || !adj[b].test(z)) return false;
    Bits common = adj[a];
    common &= adj[b];
    common.reset(z);
    return common.subset_of(adj[z]);
  }

  // Lowest dominated vertex with its lowest witness; {-1,-1} when none.
  std::pair<int, int> first_dominated_vertex() const {
    for (int a = alive.next(0); a != -1; a = alive.next(a + 1))
      for (int z = adj[a].next(0); z != -1; z = adj[a].next(z + 1))
        if (vertex_dominated(a, z)) return {a, z};
    return {-1, -1};
  }

  EliminationSequence finish(std::vector<EliminationStep> steps) const {
    EliminationSequence seq;
    seq.steps = std::move(steps);
    seq.residual_vertices = alive.to_vector();
    seq.residual = Graph(static_cast<int>(seq.residual_vertices.size()));
    for (std::size_t i = 0; i < seq.residual_vertices.size(); ++i)
      for (std::size_t j = i + 1; j < seq.residual_vertices.size(); ++j)
        if (adj[seq.residual_vertices[i]].test(seq.residual_vertices[j]))
          seq.residual.add_edge(static_cast<int>(i), static_cast<int>(j));
    return seq;
  }

  // Exact encoding (not a hash): memoizing on collisions could prune a
  // solvable branch.
  std::string state_key() const {
    std::string key;
    auto put = [&key](int x) {
      key.push_back(static_cast<char>(x & 0xff));
      key.push_back(static_cast<char>((x >> 8) & 0xff));
    };
    for (int v = alive.next(0); v != -1; v = alive.next(v + 1)) {
      put(v + 1);
      for (int u = adj[v].next(0); u != -1; u = adj[v].next(u + 1)) put(u + 1);
      put(0);
    }
    return key;
  }
};

}  // namespace

std::vector<std::pair<int, int>> dominated_vertices(const Graph& g) {
  Residual r(g);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < g.size(); ++a)
    for (int z = g.neighbors(a).next(0); z != -1;
         z = g.neighbors(a).next(z + 1))
      if (r.vertex_dominated(a, z)) out.push_back({a, z});
  return out;
}

std::vector<std::pair<std::pair<int, int>, int>> dominated_edges(
    const Graph& g) {
  Residual r(g);
  std::vector<std::pair<std::pair<int, int>, int>> out;
  for (auto [a, b] : g.edges()) {
    Bits common = g.neighbors(a);
    common &= g.neighbors(b);
    for (int z = common.next(0); z != -1; z = common.next(z + 1))
      if (r.edge_dominated(a, b, z)) out.push_back({{a, b}, z});
  }
  return out;
}

DismantleResult is_dismantlable(const Graph& g) {
  if (g.size() == 0) throw input_error("dismantling needs a nonempty graph");
  Residual r(g);
  std::vector<EliminationStep> steps;
  while (r.alive_count() > 1) {
    auto [a, z] = r.first_dominated_vertex();
    if (a == -1) break;
    EliminationStep step;
    step.kind = StepKind::vertex;
    step.removed_vertex = a;
    step.witness = z;
    steps.push_back(step);
    r.drop_vertex(a);
  }
  DismantleResult out;
  out.dismantlable = r.alive_count() == 1;
  out.seq = r.finish(std::move(steps));
  return out;
}

namespace {

struct EdgeSearch {
  std::uint64_t budget;
  std::uint64_t visited = 0;
  bool exhausted = false;
  std::unordered_set<std::string> seen;  // fully explored dead-end states
  std::vector<EliminationStep> steps;

  bool run(Residual& r) {
    if (r.alive_count() == 1) return true;
    if (exhausted) return false;
    if (visited >= budget) {
      exhausted = true;
      return false;
    }
    ++visited;
    std::string key = r.state_key();
    if (seen.count(key)) return false;

    // Vertex moves first (greedy order), then edge moves.
    for (int a = r.alive.next(0); a != -1; a = r.alive.next(a + 1)) {
      int witness = -1;
      for (int z = r.adj[a].next(0); z != -1; z = r.adj[a].next(z + 1))
        if (r.vertex_dominated(a, z)) {
          witness = z;
          break;
        }
      if (witness == -1) continue;
      Residual saved = r;
      r.drop_vertex(a);
      EliminationStep step;
      step.kind = StepKind::vertex;
      step.removed_vertex = a;
      step.witness = witness;
      steps.push_back(step);
      if (run(r)) return true;
      steps.pop_back();
      r = std::move(saved);
      if (exhausted) return false;
    }
    for (int a = r.alive.next(0); a != -1; a = r.alive.next(a + 1))
      for (int b = r.adj[a].next(a + 1); b != -1; b = r.adj[a].next(b + 1)) {
        Bits common = r.adj[a];
        common &= r.adj[b];
        int witness = -1;
        for (int z = common.next(0); z != -1; z = common.next(z + 1))
          if (r.edge_dominated(a, b, z)) {
            witness = z;
            break;
          }
        if (witness == -1) continue;
        Residual saved = r;
        r.drop_edge(a, b);
        EliminationStep step;
        step.kind = StepKind::edge;
        step.removed_edge = {a, b};
        step.witness = witness;
        steps.push_back(step);
        if (run(r)) return true;
        steps.pop_back();
        r = std::move(saved);
        if (exhausted) return false;
      }
    seen.insert(std::move(key));
    return false;
  }
};

}  // namespace

EdgeDismantleResult edge_dismantling_sequence(const Graph& g,
                                              std::uint64_t budget) {
  if (g.size() == 0) throw input_error("dismantling needs a nonempty graph");
  Residual r(g);
  EdgeSearch search;
  search.budget = budget;
  EdgeDismantleResult out;
  bool found = search.run(r);
  out.nodes_visited = search.visited;
  if (found) {
    out.status = SearchStatus::found;
    out.seq = r.finish(std::move(search.steps));
  } else {
    out.status = search.exhausted ? SearchStatus::budget_exhausted
                                  : SearchStatus::not_found;
    Residual fresh(g);
    out.seq = fresh.finish({});
  }
  return out;
}

bool replay_sequence(const Graph& g, const EliminationSequence& seq) {
  Residual r(g);
  for (const EliminationStep& step : seq.steps) {
    if (step.kind == StepKind::vertex) {
      int a = step.removed_vertex;
      if (a < 0 || a >= g.size() || !r.alive.test(a)) return false;
      if (!r.vertex_dominated(a, step.witness)) return false;
      r.drop_vertex(a);
    } else {
      auto [a, b] = step.removed_edge;
      if (a < 0 || b < 0 || a >= g.size() || b >= g.size()) return false;
      if (!r.alive.test(a) || !r.alive.test(b) || !r.adj[a].test(b))
        return false;
      if (!r.edge_dominated(a, b, step.witness)) return false;
      r.drop_edge(a, b);
    }
  }
  if (r.alive.to_vector() != seq.residual_vertices) return false;
  EliminationSequence check = r.finish({});
  return check.residual.edges() == seq.residual.edges();
}

}  // namespace grips
