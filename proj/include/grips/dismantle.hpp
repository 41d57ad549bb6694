#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grips/graph.hpp"

namespace grips {

/**
 * Dominated-vertex and dominated-edge machinery.
 *
 * A vertex a is dominated by a neighbour z when N(a) is contained in the
 * closed neighbourhood N[z].  An edge (a,b) is dominated by a common
 * neighbour z when every other common neighbour of a and b is adjacent
 * to z.  Vertex elimination is confluent for the single-vertex verdict;
 * mixed vertex/edge elimination is not known to be, hence the
 * backtracking search.
 */

enum class StepKind { vertex, edge };

struct EliminationStep {
  StepKind kind;
  int removed_vertex = -1;           // kind == vertex
  std::pair<int, int> removed_edge;  // kind == edge, a < b
  int witness = -1;
};

struct EliminationSequence {
  std::vector<EliminationStep> steps;
  std::vector<int> residual_vertices;  // original ids, ascending
  Graph residual;                      // induced on residual_vertices
};

// All pairs (a, z) with z a neighbour of a and N(a) subset of N[z],
// ascending by a then z.
std::vector<std::pair<int, int>> dominated_vertices(const Graph& g);

// All pairs ((a,b), z) where z is a common neighbour of the edge's
// endpoints and every other common neighbour is adjacent to z.
std::vector<std::pair<std::pair<int, int>, int>> dominated_edges(
    const Graph& g);

struct DismantleResult {
  bool dismantlable = false;
  EliminationSequence seq;  // witness, or the stuck residual when false
};

// Greedy elimination, lowest vertex id first (confluent for the verdict).
// Throws input_error on an empty graph.
DismantleResult is_dismantlable(const Graph& g);

enum class SearchStatus { found, not_found, budget_exhausted };

struct EdgeDismantleResult {
  SearchStatus status = SearchStatus::not_found;
  EliminationSequence seq;  // meaningful when status == found
  std::uint64_t nodes_visited = 0;
};

// Backtracking over mixed vertex/edge removals, vertex moves first, until
// a single vertex remains.  budget bounds the number of search nodes;
// exhaustion is a return state, not an error.
EdgeDismantleResult edge_dismantling_sequence(const Graph& g,
                                              std::uint64_t budget = 1000000);

// Re-executes a sequence from scratch, checking every witness in the
// residual it was recorded against; false on any violation.
bool replay_sequence(const Graph& g, const EliminationSequence& seq);

}  // namespace grips
