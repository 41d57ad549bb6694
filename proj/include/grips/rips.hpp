#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grips/graph.hpp"
#include "grips/universe.hpp"

namespace grips {

// Graph on all universe vertices with edges between distinct vertices at
// extended S-distance <= n.  Edge flags record truncation effects.
struct RipsGraph {
  int n = 0;
  Graph graph;
  // Edges present but whose defining distance is uncertified, as (a, b),
  // a < b, sorted.
  std::vector<std::pair<int, int>> uncertified_edges;
  // Vertex pairs excluded whose distance estimate exceeds n but is
  // uncertified (they may be edges in the full graph).
  long long uncertified_nonedges = 0;
};

RipsGraph rips_graph(const Universe& u, int n, SDistCache& dist);

// The Cayley ball plus one cone vertex per coset, joined to its ball
// members.  Same vertex ids as the universe.
Graph coned_off_graph(const Universe& u);

struct EdgeOrbitCensus {
  // Invariant key -> number of edges carrying it.  Keys are
  // translation-invariant strings; see the builder for the exact format.
  std::map<std::string, long long> classes;
  // False when an infinite peripheral prevented a canonical double-coset
  // minimum (keys then use ball members only).
  bool canonical = true;

  long long class_count() const { return static_cast<long long>(classes.size()); }
};

EdgeOrbitCensus count_edge_orbits(const Universe& u, const Graph& g);

struct CircuitCount {
  long long count = 0;
  bool complete = true;  // false when the search budget ran out (lower bound)
};

// Number of embedded circuits of length <= max_len through the edge (a, b).
CircuitCount fineness_audit(const Graph& g, int a, int b, int max_len,
                            long long node_budget = 50'000'000);

struct DeltaEstimate {
  double delta = 0.0;
  long long quadruples = 0;
  bool exhaustive = true;
};

// Four-point-condition hyperbolicity constant over vertex quadruples;
// sample_count == 0 means exhaustive.  Throws input_error when g is
// disconnected.
DeltaEstimate delta_hyperbolicity(const Graph& g, long long sample_count,
                                  std::uint64_t seed);

}  // namespace grips
