#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grips/group_model.hpp"
#include "grips/word.hpp"

namespace grips {

// A peripheral left coset g*P_lambda, identified by its canonical
// representative.
struct CosetVertex {
  int lambda = -1;
  Word rep;

  friend bool operator==(const CosetVertex& a, const CosetVertex& b) {
    return a.lambda == b.lambda && a.rep == b.rep;
  }
};

struct DistanceResult {
  int value = 0;
  // True iff value is certified to equal the distance in the full (infinite)
  // graph.  When false, value is the best estimate available inside the
  // truncation: the smallest distance realized by a resolved member pair,
  // or radius+1 when no pair resolved.
  bool exact = false;
};

/**
 * Truncated view of the Cayley graph: the ball of a given radius around the
 * identity, plus every peripheral left coset with a member in the ball.
 *
 * Vertex ids: 0 .. ball_size()-1 are group elements in shortlex order of
 * their normal forms ("V vertices"); ball_size() .. vertex_count()-1 are
 * cosets ("W vertices"), sorted by (lambda, rep).
 */
class Universe {
 public:
  // Builds the ball and discovers cosets.  Throws resource_error when the
  // ball exceeds ball_cap elements.
  Universe(const GroupModel& m, int radius, std::size_t ball_cap = 500000);

  const GroupModel& model() const { return model_; }
  int radius() const { return radius_; }
  // Inner radius within which geodesic containment is certified; equal to
  // radius (kept separate so consumers name their assumption).
  int cert_radius() const { return radius_; }

  // --- V side --------------------------------------------------------------
  int ball_size() const { return static_cast<int>(elements_.size()); }
  const Word& element(int vid) const { return elements_[vid]; }
  int layer(int vid) const { return layer_[vid]; }
  std::optional<int> find_element(const Word& nf) const;
  // Neighbor along one generator symbol; -1 when the product leaves the ball.
  int step(int vid, int sym) const { return step_[vid][sym]; }

  // --- W side --------------------------------------------------------------
  int coset_count() const { return static_cast<int>(cosets_.size()); }
  const CosetVertex& coset(int k) const { return cosets_[k]; }
  std::optional<int> find_coset(int lambda, const Word& rep) const;
  // Element ids of coset members inside the ball, ascending.
  const std::vector<int>& coset_ball_members(int k) const {
    return coset_members_[k];
  }
  // True iff the full member list of the coset is known (finite peripheral).
  bool coset_members_known(int k) const;
  // All members as normal forms (finite peripherals only), sorted shortlex.
  // Words may lie outside the ball.
  const std::vector<Word>& coset_all_members(int k) const;

  // --- unified vertex ids ----------------------------------------------------
  int vertex_count() const { return ball_size() + coset_count(); }
  bool is_element_vertex(int vtx) const { return vtx < ball_size(); }
  bool is_coset_vertex(int vtx) const { return vtx >= ball_size(); }
  int coset_index(int vtx) const { return vtx - ball_size(); }
  // V: the normal form; W: "lambda:rep".
  std::string vertex_label(int vtx) const;
  // Id of the vertex for a coset, given its index on the W side.
  int coset_vertex_id(int k) const { return ball_size() + k; }

  // --- distances -------------------------------------------------------------
  // Distance between two group elements given as normal forms: exact with
  // the true word-metric value when nf(a^-1 b) lies in the ball, otherwise
  // {radius+1, exact=false} (the true distance is then known to be > radius).
  DistanceResult element_distance(const Word& a, const Word& b) const;

  // Extended S-distance between universe vertices (V or W); set-to-set
  // distance for cosets.  See DistanceResult for truncation semantics.
  DistanceResult s_distance(int x, int y) const;

  // True when every geodesic between elements at the given layers with the
  // given distance stays inside the certified ball: (la + lb + d)/2 within
  // cert_radius.
  bool geodesic_contained(int layer_a, int layer_b, int d) const {
    return layer_a + layer_b + d <= 2 * cert_radius();
  }

 private:
  struct MemberView;
  MemberView members_of(int vtx) const;

  const GroupModel& model_;
  int radius_;
  std::vector<Word> elements_;             // shortlex sorted
  std::vector<int> layer_;                 // S-length per element
  std::vector<std::vector<int>> step_;     // [vid][sym] -> vid or -1
  std::unordered_map<Word, int, WordHash> index_;
  std::vector<CosetVertex> cosets_;        // sorted by (lambda, rep)
  std::vector<std::vector<int>> coset_members_;
  std::vector<std::vector<Word>> coset_full_;  // empty when peripheral infinite
  std::vector<char> coset_known_;
};

// Memoizing wrapper for s_distance; keyed on unordered vertex pairs.
class SDistCache {
 public:
  explicit SDistCache(const Universe& u) : u_(u) {}
  DistanceResult operator()(int x, int y);
  const Universe& universe() const { return u_; }

 private:
  const Universe& u_;
  std::unordered_map<std::uint64_t, DistanceResult> map_;
};

}  // namespace grips
