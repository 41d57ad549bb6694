#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "grips/universe.hpp"

namespace grips {

// Constants controlling deep-vertex classification and triangle thinness.
// epsilon: closeness threshold to a coset; R: window radius for deepness;
// D: thinness bound; K: reserved tuning constant (estimated, never consumed).
struct GeometryParams {
  int epsilon = 1;
  int R = 1;
  int D = 1;
  int K = 1;
};

// Throws input_error unless all fields are positive and D >= epsilon.
void validate(const GeometryParams& params);

// A geodesic edge-path between two universe vertices.  The interior runs
// through group elements; when an endpoint is a coset, the path starts or
// ends at one of its members.
struct GeodesicPath {
  int a = -1;
  int b = -1;
  std::vector<int> vertices;  // element vertex ids, consecutive at distance 1

  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// One geodesic from a to b, deterministic: the start and end members are the
// shortlex-least pair realizing the distance that admits an in-ball geodesic,
// and ties between successive vertices resolve to the shortlex-least element.
// Requires a != b unless both name the same group element.  Throws
// truncation_error when the distance is uncertified or no geodesic stays
// inside the ball.
GeodesicPath geodesic(const Universe& u, SDistCache& dist, int a, int b);

// All group elements lying on some geodesic from a to b, ascending by id.
// Membership is decided by the betweenness criterion: some member pair admits
// certified legs through x summing to the distance.  Throws truncation_error
// when the distance is uncertified or an endpoint coset has members that
// cannot be listed.
std::vector<int> geodesic_interval(const Universe& u, SDistCache& dist, int a,
                                   int b);

struct VertexTag {
  bool deep = false;
  int coset = -1;  // cone vertex id when deep
};

struct DeepClassification {
  std::vector<VertexTag> tags;  // one per path index
  bool double_deep = false;     // some index is deep in two distinct cosets
  int double_deep_index = -1;
  std::pair<int, int> double_deep_cosets{-1, -1};
};

// Tags each path vertex as deep (in some coset) or transition.  Index i is
// deep in w when R <= i <= length-R and every vertex at index within R of i
// sits at S-distance <= epsilon from w.  Throws truncation_error when a
// required closeness cannot be decided at this radius.
DeepClassification classify_vertices(const Universe& u, SDistCache& dist,
                                     const GeodesicPath& p,
                                     const GeometryParams& params);

// Sampling policy for the estimators: either exhaust all certified inputs or
// draw `count` random ones from the stated seed.
struct SampleSpec {
  bool exhaustive = true;
  long long count = 0;
};

struct REstimate {
  int R = 1;
  long long geodesics_scanned = 0;
  long long skipped = 0;  // uncertified geodesics left out of the scan
  bool exhaustive = true;
};

// Least R such that no vertex of a scanned geodesic is (epsilon,R)-deep in
// two distinct cosets.  Exhaustive mode walks one shortlex geodesic per
// ordered vertex pair; sampled mode draws pairs from the seed.
REstimate estimate_R(const Universe& u, SDistCache& dist, int epsilon,
                     const SampleSpec& spec, std::uint64_t seed);

struct TriangleDefect {
  int defect = 0;
  int z = -1;  // the probed vertex: a cone vertex when deep, else p^{ab}_i
  bool z_deep = false;
};

// Measures triangle thinness at index i of the side from a to b: builds the
// three shortlex geodesics, replaces p^{ab}_i by its deep coset when there is
// one, and returns the smaller of the distances to the matching vertices of
// the other two sides (indices past an end clamp to the end).  Throws
// input_error when a == b or i is out of range.
TriangleDefect thin_triangle_check(const Universe& u, SDistCache& dist, int a,
                                   int b, int c, int i,
                                   const GeometryParams& params);

struct WorstCaseDefect {
  int defect = 0;
  bool complete = true;  // false when the node budget cut enumeration short
  long long windows_seen = 0;
};

// Worst-case variant of thin_triangle_check: maximizes the defect over all
// geodesic triples.  Side vertices range over betweenness position sets; the
// deep-or-transition status of index i is decided per window path, counted
// against the node budget.
WorstCaseDefect thin_triangle_worst_case(const Universe& u, SDistCache& dist,
                                         int a, int b, int c, int i,
                                         const GeometryParams& params,
                                         long long node_budget);

struct DEstimate {
  int D = 0;
  std::map<int, long long> histogram;  // defect -> occurrence count
  long long measurements = 0;
  long long skipped = 0;  // aborted by uncertified distances
  bool exhaustive = true;
};

// Empirical thinness constant: the largest defect over measured (a,b,c,i)
// quadruples.  Exhaustive mode visits every ordered triple with a != b and
// every index; sampled mode draws `count` quadruples from the seed.
DEstimate estimate_D(const Universe& u, SDistCache& dist, int epsilon, int R,
                     const SampleSpec& spec, std::uint64_t seed);

struct ConvexityViolation {
  int u_prime = -1;  // the far endpoint whose geodesics leave U
  int x = -1;        // element on a geodesic at position <= length - mu
  int missing = -1;  // vertex required in U: x itself or a nearby cone vertex
};

struct ConvexityResult {
  bool convex = true;
  std::optional<ConvexityViolation> witness;
};

// Checks mu-convexity of U with respect to base: whenever an element x sits
// at position j <= length-mu on some geodesic from base to a member of U,
// x must lie in U and so must every cone vertex within epsilon of x.
// Returns the first violation in (u', x, missing) order.  Throws
// truncation_error when geodesics may leave the ball or a closeness to a
// cone vertex outside U cannot be decided.
ConvexityResult is_mu_convex(const Universe& u, SDistCache& dist,
                             const std::vector<int>& U, int base, int mu,
                             int epsilon);

struct HullResult {
  std::vector<int> members;    // ascending vertex ids
  std::vector<int> uncertain;  // membership undecidable at this radius
};

// r-hull of U: elements within r of every member of U, together with cone
// vertices within r+epsilon of every member of U.
HullResult r_hull(const Universe& u, SDistCache& dist,
                  const std::vector<int>& U, int r, int epsilon);

}  // namespace grips
