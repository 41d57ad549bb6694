#include "grips/rips.hpp"

#include <algorithm>

#include "grips/errors.hpp"
#include "grips/rng.hpp"

namespace grips {

RipsGraph rips_graph(const Universe& u, int n, SDistCache& dist) {
  if (n < 1) throw input_error("Rips parameter n must be positive");
  RipsGraph r;
  r.n = n;
  r.graph = Graph(u.vertex_count());
  for (int x = 0; x < u.vertex_count(); ++x)
    for (int y = x + 1; y < u.vertex_count(); ++y) {
      DistanceResult d = dist(x, y);
      if (d.value <= n) {
        r.graph.add_edge(x, y);
        if (!d.exact) r.uncertified_edges.emplace_back(x, y);
      } else if (!d.exact) {
        ++r.uncertified_nonedges;
      }
    }
  return r;
}

Graph coned_off_graph(const Universe& u) {
  Graph g(u.vertex_count());
  for (int v = 0; v < u.ball_size(); ++v)
    for (int sym = 0; sym < 2 * u.model().alphabet_size(); ++sym) {
      int t = u.step(v, sym);
      if (t >= 0 && t != v && !g.has_edge(v, t)) g.add_edge(v, t);
    }
  for (int k = 0; k < u.coset_count(); ++k)
    for (int vid : u.coset_ball_members(k)) g.add_edge(vid, u.coset_vertex_id(k));
  return g;
}

namespace {

// Shortlex-least element of P_lambda * d * P_mu; exact when both peripheral
// element lists are known.
Word double_coset_min(const Universe& u, int lambda, int mu, const Word& d,
                      bool* canonical) {
  const GroupModel& m = u.model();
  const auto& left = m.peripheral_elements(lambda);
  const auto& right = m.peripheral_elements(mu);
  if (!left || !right) {
    *canonical = false;
    return m.normalize(d);
  }
  Word best;
  bool have = false;
  for (const Word& p : *left) {
    Word pd = mul(m, p, d);
    for (const Word& q : *right) {
      Word cand = mul(m, pd, q);
      if (!have || shortlex_less(cand, best)) {
        best = std::move(cand);
        have = true;
      }
    }
  }
  return best;
}

std::string ww_key(const Universe& u, const CosetVertex& a,
                   const CosetVertex& b, bool* canonical) {
  const GroupModel& m = u.model();
  Word d = m.normalize(concat(inverse_word(a.rep), b.rep));
  Word inv = double_coset_min(u, a.lambda, b.lambda, d, canonical);
  return "WW " + std::to_string(a.lambda) + " " + std::to_string(b.lambda) +
         " " + m.word_str(inv);
}

}  // namespace

EdgeOrbitCensus count_edge_orbits(const Universe& u, const Graph& g) {
  const GroupModel& m = u.model();
  EdgeOrbitCensus census;
  for (auto [x, y] : g.edges()) {
    std::string key;
    if (u.is_element_vertex(x) && u.is_element_vertex(y)) {
      Word d = m.normalize(concat(inverse_word(u.element(x)), u.element(y)));
      Word di = inv_nf(m, d);
      key = "VV " + m.word_str(shortlex_less(d, di) ? d : di);
    } else if (u.is_element_vertex(x) || u.is_element_vertex(y)) {
      int v = u.is_element_vertex(x) ? x : y;
      const CosetVertex& c = u.coset(u.coset_index(u.is_element_vertex(x) ? y : x));
      Word d = m.normalize(concat(inverse_word(u.element(v)), c.rep));
      key = "VW " + std::to_string(c.lambda) + " " +
            m.word_str(m.coset_rep(c.lambda, d));
    } else {
      const CosetVertex& a = u.coset(u.coset_index(x));
      const CosetVertex& b = u.coset(u.coset_index(y));
      std::string k1 = ww_key(u, a, b, &census.canonical);
      std::string k2 = ww_key(u, b, a, &census.canonical);
      key = std::min(k1, k2);
    }
    ++census.classes[key];
  }
  return census;
}

namespace {

struct CircuitSearch {
  const Graph& g;
  int target;
  int max_path_len;
  long long budget;
  long long count = 0;
  bool complete = true;
  std::vector<char> visited;

  void dfs(int v, int len) {
    if (budget-- <= 0) {
      complete = false;
      return;
    }
    if (v == target) {
      if (len >= 2) ++count;  // edge + path of length >= 2 forms a circuit
      return;
    }
    if (len == max_path_len) return;
    visited[v] = 1;
    const Bits& nb = g.neighbors(v);
    for (int w = nb.next(0); w != -1 && complete; w = nb.next(w + 1))
      if (!visited[w]) dfs(w, len + 1);
    visited[v] = 0;
  }
};

}  // namespace

CircuitCount fineness_audit(const Graph& g, int a, int b, int max_len,
                            long long node_budget) {
  if (a == b || a < 0 || b < 0 || a >= g.size() || b >= g.size() ||
      !g.has_edge(a, b))
    throw input_error("fineness audit requires an existing edge");
  if (max_len < 3) throw input_error("circuit length bound must be at least 3");

  // A circuit through (a,b) is the edge plus an embedded path from b to a
  // avoiding that edge; enumerate such paths.
  CircuitSearch s{g, a, max_len - 1, node_budget, 0, true, {}};
  s.visited.assign(g.size(), 0);
  s.visited[a] = 0;
  s.visited[b] = 1;
  const Bits& nb = g.neighbors(b);
  for (int w = nb.next(0); w != -1 && s.complete; w = nb.next(w + 1))
    if (w != a) s.dfs(w, 1);
  return {s.count, s.complete};
}

DeltaEstimate delta_hyperbolicity(const Graph& g, long long sample_count,
                                  std::uint64_t seed) {
  if (!g.connected())
    throw input_error("hyperbolicity scan requires a connected graph");
  const int n = g.size();
  auto d = g.all_pairs_distances();

  int two_delta = 0;
  auto quad = [&](int i, int j, int k, int l) {
    int s1 = d[i][j] + d[k][l];
    int s2 = d[i][k] + d[j][l];
    int s3 = d[i][l] + d[j][k];
    int hi = std::max({s1, s2, s3});
    int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    two_delta = std::max(two_delta, hi - mid);
  };

  DeltaEstimate est;
  if (sample_count == 0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            quad(i, j, k, l);
            ++est.quadruples;
          }
  } else {
    est.exhaustive = false;
    Rng rng(seed);
    for (long long t = 0; t < sample_count; ++t) {
      int v[4];
      for (int s = 0; s < 4; ++s) {
        bool fresh;
        do {
          v[s] = rng.below(n);
          fresh = true;
          for (int p = 0; p < s; ++p) fresh &= v[p] != v[s];
        } while (!fresh && n >= 4);
      }
      if (n < 4) break;
      quad(v[0], v[1], v[2], v[3]);
      ++est.quadruples;
    }
  }
  est.delta = two_delta / 2.0;
  return est;
}

}  // namespace grips
