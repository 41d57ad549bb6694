#pragma once

#include <string>
#include <vector>

#include "grips/complex.hpp"
#include "grips/graph.hpp"
#include "grips/group_model.hpp"
#include "grips/universe.hpp"
#include "grips/word.hpp"

namespace grips {

/**
 * Left multiplication action of group elements on a Universe, and the
 * machinery built on it: orbits, quasi-centres, fixed cliques, simplex
 * stabilizers, finite-subgroup enumeration, and fixed-point subcomplexes.
 */

struct FiniteSubgroup {
  std::vector<Word> elements;  // normal forms, sorted shortlex, with identity
  std::vector<Word> generators;
};

// Closure of the generators under multiplication and inverse.  Throws
// input_error when the closure exceeds cap (not certifiably finite).
FiniteSubgroup make_subgroup(const GroupModel& m, std::vector<Word> generators,
                             std::size_t cap = 100000);

// Images of every universe vertex under left multiplication by h, as a
// permutation-shaped vector (image ids).  Throws truncation_error when an
// image leaves the universe, naming the offending vertex.
std::vector<int> left_action_permutation(const Universe& u, const Word& h);

// {h*x : h in H} as sorted unique vertex ids.  Throws truncation_error when
// a translate is not representable in the universe.
std::vector<int> orbit(const Universe& u, const FiniteSubgroup& H, int vertex);

struct QuasiCentreResult {
  int rho = 0;
  std::vector<int> centre;  // argmin vertex ids, ascending
  // Every distance feeding rho and the centre membership tests was exact.
  bool distances_exact = false;
  // Vertices outside the truncation provably cannot join the centre: the
  // eccentricity lower bound for unseen vertices strictly exceeds rho.
  bool coverage_complete = false;
};

// Radius and quasi-centre of a finite vertex set: rho = min over all
// universe vertices z of max_{x in U} |z,x|_S, with the full argmin set.
// Throws input_error when U is empty.
QuasiCentreResult radius_and_quasicentre(const Universe& u,
                                         const std::vector<int>& U);

struct FixedCliqueResult {
  bool found = false;
  std::vector<int> clique;  // vertex ids, ascending
  int base = -1;            // orbit base that produced it
};

// Searches for an H-invariant clique of gamma_n: walks base vertices in
// ascending id order, takes the quasi-centre of the orbit, and checks it is
// an invariant clique.  Not finding one inside the truncation is a result
// (found = false), not an error.
FixedCliqueResult fixed_clique(const Universe& u, const Graph& gamma_n,
                               const FiniteSubgroup& H);

struct StabilizerResult {
  FiniteSubgroup group;
  // True when the candidate scan provably saw every stabilizing element
  // (simplex contains a V vertex, or an anchor coset with known full
  // member list).
  bool complete = false;
};

// Setwise stabilizer of a simplex of universe vertices under the left
// action.  Requires at least two vertices (input_error otherwise).
StabilizerResult simplex_stabilizer(const Universe& u,
                                    const std::vector<int>& simplex);

struct SubgroupReport {
  FiniteSubgroup group;
  bool in_ball = true;  // every element's normal form lies in the ball
  // trivial | peripheral-conjugate | exceptional | exceptional-in-truncation
  std::string classification;
  int peripheral = -1;  // lambda for peripheral-conjugate
  Word conjugator;      // c with c^-1 H c inside P_lambda
};

// Finite subgroups generated by ball torsion elements, with orders capped
// at max_order; deduplicated, sorted by (order, element lists).
std::vector<SubgroupReport> enumerate_finite_subgroups(const Universe& u,
                                                       int max_order);

// Simplices of c invariant (setwise) under the group generated by the given
// vertex permutations, sorted by (size, lexicographic).  Throws input_error
// when a permutation fails to preserve c, naming a violating simplex.
std::vector<Simplex> invariant_simplices(
    const SimplicialComplex& c, const std::vector<std::vector<int>>& gens);

// Fixed-point subcomplex in the barycentric model: the order complex of the
// poset of invariant simplices.  Vertex k of the output is the k-th entry
// of invariant_simplices(c, gens).
SimplicialComplex fixed_point_complex(const SimplicialComplex& c,
                                      const std::vector<std::vector<int>>& gens);

}  // namespace grips
