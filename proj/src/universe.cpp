#include "grips/universe.hpp"

#include <algorithm>
#include <climits>

#include "grips/errors.hpp"

namespace grips {

namespace {

bool coset_key_less(const CosetVertex& a, const CosetVertex& b) {
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return shortlex_less(a.rep, b.rep);
}

}  // namespace

Universe::Universe(const GroupModel& m, int radius, std::size_t ball_cap)
    : model_(m), radius_(radius) {
  if (radius < 0) throw input_error("ball radius must be nonnegative");

  // Layered expansion from the identity; first discovery fixes the S-length.
  std::unordered_map<Word, int, WordHash> seen;
  std::vector<Word> frontier{m.normalize({})};
  seen.emplace(frontier.front(), 0);
  for (int l = 1; l <= radius && !frontier.empty(); ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int sym = 0; sym < 2 * m.alphabet_size(); ++sym) {
        Word n = m.normalize(concat(w, {sym_gen(sym)}));
        if (seen.emplace(n, l).second) {
          if (seen.size() > ball_cap)
            throw resource_error("ball size exceeds the cap of " +
                                 std::to_string(ball_cap) + " elements");
          next.push_back(std::move(n));
        }
      }
    }
    frontier = std::move(next);
  }

  elements_.reserve(seen.size());
  for (const auto& [w, l] : seen) elements_.push_back(w);
  std::sort(elements_.begin(), elements_.end(), shortlex_less);
  layer_.reserve(elements_.size());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    layer_.push_back(seen.at(elements_[i]));
    index_.emplace(elements_[i], static_cast<int>(i));
  }

  const int syms = 2 * m.alphabet_size();
  step_.assign(elements_.size(), std::vector<int>(syms, -1));
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (int sym = 0; sym < syms; ++sym) {
      Word n = m.normalize(concat(elements_[i], {sym_gen(sym)}));
      auto it = index_.find(n);
      if (it != index_.end()) step_[i][sym] = it->second;
    }

  // Peripheral cosets meeting the ball: canonical rep per element, dedup.
  std::vector<std::pair<CosetVertex, std::vector<int>>> buckets;
  for (int lambda = 0; lambda < m.peripheral_count(); ++lambda) {
    std::unordered_map<Word, std::size_t, WordHash> where;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      Word rep = m.coset_rep(lambda, elements_[i]);
      auto it = where.find(rep);
      if (it == where.end()) {
        where.emplace(rep, buckets.size());
        buckets.push_back({CosetVertex{lambda, std::move(rep)},
                           std::vector<int>{static_cast<int>(i)}});
      } else {
        buckets[it->second].second.push_back(static_cast<int>(i));
      }
    }
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const auto& a, const auto& b) {
              return coset_key_less(a.first, b.first);
            });
  for (auto& [cv, members] : buckets) {
    const auto& elems = m.peripheral_elements(cv.lambda);
    if (elems) {
      std::vector<Word> full;
      full.reserve(elems->size());
      for (const Word& p : *elems) full.push_back(mul(m, cv.rep, p));
      std::sort(full.begin(), full.end(), shortlex_less);
      coset_full_.push_back(std::move(full));
      coset_known_.push_back(1);
    } else {
      coset_full_.emplace_back();
      coset_known_.push_back(0);
    }
    cosets_.push_back(std::move(cv));
    coset_members_.push_back(std::move(members));
  }
}

std::optional<int> Universe::find_element(const Word& nf) const {
  auto it = index_.find(nf);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Universe::find_coset(int lambda, const Word& rep) const {
  CosetVertex key{lambda, rep};
  auto it = std::lower_bound(cosets_.begin(), cosets_.end(), key,
                             coset_key_less);
  if (it == cosets_.end() || !(*it == key)) return std::nullopt;
  return static_cast<int>(it - cosets_.begin());
}

bool Universe::coset_members_known(int k) const { return coset_known_[k]; }

const std::vector<Word>& Universe::coset_all_members(int k) const {
  if (!coset_known_[k])
    throw input_error("coset members are not fully known (infinite peripheral)");
  return coset_full_[k];
}

std::string Universe::vertex_label(int vtx) const {
  if (is_element_vertex(vtx)) return model_.word_str(element(vtx));
  const CosetVertex& c = coset(coset_index(vtx));
  return std::to_string(c.lambda) + ":" + model_.word_str(c.rep);
}

DistanceResult Universe::element_distance(const Word& a, const Word& b) const {
  Word d = model_.normalize(concat(inverse_word(a), b));
  auto it = index_.find(d);
  if (it != index_.end()) return {layer_[it->second], true};
  return {radius_ + 1, false};
}

// Member words of a vertex, with layers (-1 when outside the ball) and a
// flag for members that cannot be listed at all.
struct Universe::MemberView {
  std::vector<const Word*> words;
  std::vector<int> layers;
  bool phantoms = false;
};

Universe::MemberView Universe::members_of(int vtx) const {
  MemberView mv;
  if (is_element_vertex(vtx)) {
    mv.words.push_back(&elements_[vtx]);
    mv.layers.push_back(layer_[vtx]);
    return mv;
  }
  int k = coset_index(vtx);
  if (coset_known_[k]) {
    for (const Word& w : coset_full_[k]) {
      mv.words.push_back(&w);
      auto it = index_.find(w);
      mv.layers.push_back(it == index_.end() ? -1 : layer_[it->second]);
    }
  } else {
    for (int vid : coset_members_[k]) {
      mv.words.push_back(&elements_[vid]);
      mv.layers.push_back(layer_[vid]);
    }
    mv.phantoms = true;
  }
  return mv;
}

DistanceResult Universe::s_distance(int x, int y) const {
  if (x < 0 || y < 0 || x >= vertex_count() || y >= vertex_count())
    throw input_error("vertex id out of range");
  if (x == y) return {0, true};
  MemberView mx = members_of(x), my = members_of(y);

  int best = INT_MAX;
  for (const Word* a : mx.words)
    for (const Word* b : my.words) {
      DistanceResult d = element_distance(*a, *b);
      if (d.exact && d.value < best) best = d.value;
    }
  if (best == INT_MAX) return {radius_ + 1, false};
  if (best == 0) return {0, true};

  // Certify that no unlistable member could realize a smaller distance:
  // such a member has S-length > radius, so its distance to a member at
  // layer L is more than radius - L.
  bool exact = true;
  auto audit = [&](const MemberView& unknown, const MemberView& other) {
    if (!unknown.phantoms) return;
    int max_layer = -1;
    for (int l : other.layers) {
      if (l == -1 || other.phantoms) {
        exact = false;  // unbounded pairing with an out-of-ball member
        return;
      }
      max_layer = std::max(max_layer, l);
    }
    if (radius_ + 1 - max_layer < best) exact = false;
  };
  audit(mx, my);
  audit(my, mx);
  return {best, exact};
}

DistanceResult SDistCache::operator()(int x, int y) {
  if (x > y) std::swap(x, y);
  std::uint64_t key =
      (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y);
  auto it = map_.find(key);
  if (it != map_.end()) return it->second;
  DistanceResult d = u_.s_distance(x, y);
  map_.emplace(key, d);
  return d;
}

}  // namespace grips
