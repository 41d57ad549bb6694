#include "grips/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "grips/errors.hpp"
#include "grips/rng.hpp"

namespace grips {

namespace {

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : s) {
      h ^= static_cast<std::size_t>(v) + 1;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<Simplex> faces_of(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() <= 1) return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) f.push_back(s[j]);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

void SimplicialComplex::add_closed(const Simplex& s) {
  if (s.empty()) throw input_error("cannot add an empty simplex");
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("simplex vertices must be distinct");
  for (std::uint32_t mask = 1; mask < (1u << sorted.size()); ++mask) {
    Simplex f;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (mask & (1u << i)) f.push_back(sorted[i]);
    int d = static_cast<int>(f.size()) - 1;
    if (d >= static_cast<int>(by_dim_.size())) by_dim_.resize(d + 1);
    by_dim_[d].push_back(std::move(f));
  }
}

void SimplicialComplex::finish() {
  for (auto& level : by_dim_) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
}

std::size_t SimplicialComplex::total() const {
  std::size_t t = 0;
  for (const auto& level : by_dim_) t += level.size();
  return t;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  int d = static_cast<int>(s.size()) - 1;
  if (d < 0 || d > dim()) return false;
  return std::binary_search(by_dim_[d].begin(), by_dim_[d].end(), s);
}

bool SimplicialComplex::validate(const Graph* g) const {
  for (int d = 1; d <= dim(); ++d)
    for (const Simplex& s : by_dim_[d]) {
      if (!std::is_sorted(s.begin(), s.end())) return false;
      for (const Simplex& f : faces_of(s))
        if (!contains(f)) return false;
      if (g) {
        for (std::size_t i = 0; i < s.size(); ++i)
          for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g->has_edge(s[i], s[j])) return false;
      }
    }
  return true;
}

namespace {

void extend_cliques(const Graph& g, Simplex& cur, const Bits& cands, int d_max,
                    std::size_t cap, std::vector<std::vector<Simplex>>& levels,
                    std::size_t& produced) {
  int d = static_cast<int>(cur.size()) - 1;
  if (++produced > cap)
    throw resource_error("simplex count exceeds the cap of " +
                         std::to_string(cap));
  levels[d].push_back(cur);
  if (d == d_max) return;
  for (int w = cands.next(0); w != -1; w = cands.next(w + 1)) {
    Bits next = cands;
    next &= g.neighbors(w);
    // keep only ids above w so every clique is produced exactly once
    for (int p = next.next(0); p != -1 && p <= w; p = next.next(p + 1))
      next.reset(p);
    cur.push_back(w);
    extend_cliques(g, cur, next, d_max, cap, levels, produced);
    cur.pop_back();
  }
}

}  // namespace

SimplicialComplex clique_complex(const Graph& g, int d_max, std::size_t cap) {
  if (d_max < 1) throw input_error("complex dimension cap must be at least 1");
  std::vector<std::vector<Simplex>> levels(d_max + 1);
  std::size_t produced = 0;
  Simplex cur;
  for (int v = 0; v < g.size(); ++v) {
    Bits cands = g.neighbors(v);
    for (int p = cands.next(0); p != -1 && p <= v; p = cands.next(p + 1))
      cands.reset(p);
    cur.push_back(v);
    extend_cliques(g, cur, cands, d_max, cap, levels, produced);
    cur.pop_back();
  }
  // The clique family is closed under subsets and the DFS emits each level
  // in lexicographic order already, so the levels can be adopted wholesale.
  SimplicialComplex out;
  out.by_dim_ = std::move(levels);
  out.finish();
  return out;
}

namespace {

// Shared collapse engine: strategy picks the next free face among the
// current candidates (kept sorted by (dim, lex)).
struct CollapseEngine {
  using Key = std::pair<int, Simplex>;

  std::unordered_map<Simplex, int, SimplexHash> coface_count;
  std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> cofaces;
  std::set<Simplex> alive;
  std::set<Key> free_faces;  // ordered by (dim, lex)
  std::vector<CollapseStep> log;

  explicit CollapseEngine(const SimplicialComplex& c) {
    for (int d = 0; d <= c.dim(); ++d)
      for (const Simplex& s : c.simplices(d)) {
        alive.insert(s);
        coface_count.emplace(s, 0);
      }
    for (int d = 1; d <= c.dim(); ++d)
      for (const Simplex& s : c.simplices(d))
        for (const Simplex& f : faces_of(s)) {
          ++coface_count[f];
          cofaces[f].push_back(s);
        }
    for (const Simplex& s : alive) refresh(s);
  }

  void refresh(const Simplex& s) {
    Key k{static_cast<int>(s.size()) - 1, s};
    if (alive.count(s) && coface_count[s] == 1)
      free_faces.insert(k);
    else
      free_faces.erase(k);
  }

  // The unique living coface of a free face.
  const Simplex& coface_of(const Simplex& s) const {
    for (const Simplex& t : cofaces.at(s))
      if (alive.count(t)) return t;
    throw input_error("collapse bookkeeping lost a coface");
  }

  void remove(const Simplex& s) {
    alive.erase(s);
    free_faces.erase(Key{static_cast<int>(s.size()) - 1, s});
    for (const Simplex& f : faces_of(s)) {
      auto it = coface_count.find(f);
      if (it != coface_count.end()) {
        --it->second;
        refresh(f);
      }
    }
  }

  // By value: s typically aliases the free_faces node erased below.
  void collapse_once(Simplex s) {
    Simplex t = coface_of(s);
    remove(t);
    remove(s);
    log.push_back({std::move(s), std::move(t)});
  }

  bool run(Rng* rng) {
    while (!free_faces.empty()) {
      auto it = free_faces.begin();
      if (rng) {
        int k = rng->below(static_cast<int>(free_faces.size()));
        std::advance(it, k);
      }
      collapse_once(it->second);
    }
    return alive.size() == 1;
  }

  SimplicialComplex residual() const {
    SimplicialComplex c;
    for (const Simplex& s : alive) c.add_closed(s);
    c.finish();
    return c;
  }
};

}  // namespace

CollapseResult collapse_complex(const SimplicialComplex& c) {
  CollapseEngine eng(c);
  bool point = eng.run(nullptr);
  CollapseResult out;
  out.residual = eng.residual();
  out.log = std::move(eng.log);
  out.collapsed_to_point = point;
  return out;
}

std::vector<long long> reduced_betti_z2(const SimplicialComplex& c) {
  if (c.empty()) throw input_error("Betti numbers need a nonempty complex");

  // rank over GF(2) of the boundary map from dimension d to d-1
  auto boundary_rank = [&](int d) -> long long {
    if (d < 1 || d > c.dim()) return 0;
    const auto& rows = c.simplices(d - 1);
    const auto& cols = c.simplices(d);
    std::unordered_map<Simplex, int, SimplexHash> row_ix;
    for (std::size_t i = 0; i < rows.size(); ++i)
      row_ix.emplace(rows[i], static_cast<int>(i));
    const std::size_t words = (rows.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> pivots;  // reduced columns
    std::vector<int> pivot_row;
    long long rank = 0;
    for (const Simplex& s : cols) {
      std::vector<std::uint64_t> col(words, 0);
      for (const Simplex& f : faces_of(s)) {
        int r = row_ix.at(f);
        col[r >> 6] ^= std::uint64_t{1} << (r & 63);
      }
      for (std::size_t p = 0; p < pivots.size(); ++p) {
        int r = pivot_row[p];
        if ((col[r >> 6] >> (r & 63)) & 1)
          for (std::size_t w = 0; w < words; ++w) col[w] ^= pivots[p][w];
      }
      int lead = -1;
      for (std::size_t w = 0; w < words && lead < 0; ++w)
        if (col[w]) {
          for (int b = 0; b < 64; ++b)
            if ((col[w] >> b) & 1) {
              lead = static_cast<int>(w) * 64 + b;
              break;
            }
        }
      if (lead >= 0) {
        pivots.push_back(std::move(col));
        pivot_row.push_back(lead);
        ++rank;
      }
    }
    return rank;
  };

  long long r1 = boundary_rank(1), r2 = boundary_rank(2), r3 = boundary_rank(3);
  auto cnt = [&](int d) { return static_cast<long long>(c.count(d)); };
  return {cnt(0) - 1 - r1, cnt(1) - r1 - r2, cnt(2) - r2 - r3};
}

ContractibilityReport contractibility_report(const SimplicialComplex& c,
                                             std::uint64_t seed) {
  ContractibilityReport rep;
  if (c.empty()) {
    rep.verdict = "not-contractible";
    return rep;
  }

  CollapseResult canonical = collapse_complex(c);
  rep.collapsible = canonical.collapsed_to_point;
  if (!rep.collapsible) {
    // Collapsing is order-sensitive; hunt for a witness order.
    Rng rng(seed);
    for (int attempt = 0; attempt < 8 && !rep.collapsible; ++attempt) {
      Rng sub = rng.substream("collapse-" + std::to_string(attempt));
      CollapseEngine eng(c);
      rep.collapsible = eng.run(&sub);
    }
  }

  rep.betti = reduced_betti_z2(canonical.residual);
  bool obstructed = false;
  for (long long b : rep.betti) obstructed |= b != 0;
  if (rep.collapsible)
    rep.verdict = "contractible-evidence";
  else if (obstructed)
    rep.verdict = "not-contractible";
  else
    rep.verdict = "inconclusive";
  return rep;
}

}  // namespace grips
