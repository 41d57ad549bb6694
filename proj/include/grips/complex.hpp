#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grips/graph.hpp"

namespace grips {

using Simplex = std::vector<int>;  // vertex ids, strictly ascending

/**
 * Finite simplicial complex, stored per dimension with each dimension's
 * simplices sorted lexicographically.  Closed under faces by construction
 * of the builders; validate() re-checks.
 */
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  void add_closed(const Simplex& s);  // inserts s with all faces
  void finish();                      // sort + dedup (builders call this)

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int d) const {
    return d >= 0 && d <= dim() ? by_dim_[d].size() : 0;
  }
  std::size_t total() const;
  const std::vector<Simplex>& simplices(int d) const { return by_dim_[d]; }
  bool contains(const Simplex& s) const;
  bool empty() const { return by_dim_.empty(); }

  // Faces are present and every simplex's vertex pairs exist in g (when
  // given); used by property tests.
  bool validate(const Graph* g = nullptr) const;

 private:
  friend SimplicialComplex clique_complex(const Graph&, int, std::size_t);

  std::vector<std::vector<Simplex>> by_dim_;
};

// All cliques of g with at most d_max+1 vertices, in lexicographic order.
// Throws resource_error when the simplex count would exceed cap.
SimplicialComplex clique_complex(const Graph& g, int d_max,
                                 std::size_t cap = 2'000'000);

struct CollapseStep {
  Simplex free_face;
  Simplex coface;
};

struct CollapseResult {
  SimplicialComplex residual;
  std::vector<CollapseStep> log;
  bool collapsed_to_point = false;
};

// Greedy free-face collapsing: repeatedly remove a simplex contained in
// exactly one other simplex, together with that coface; first candidate in
// (dimension, lexicographic) order each round.
CollapseResult collapse_complex(const SimplicialComplex& c);

// Reduced Z/2 Betti numbers b0..b2 (ranks of boundary maps up to dim 3).
std::vector<long long> reduced_betti_z2(const SimplicialComplex& c);

struct ContractibilityReport {
  bool collapsible = false;
  std::vector<long long> betti;  // reduced, dims 0..2
  std::string verdict;           // contractible-evidence | not-contractible |
                                 // inconclusive
};

// Collapsibility witness search (several deterministic strategies plus
// seeded shuffles) combined with the Betti obstruction.
ContractibilityReport contractibility_report(const SimplicialComplex& c,
                                             std::uint64_t seed = 2026);

}  // namespace grips
