#include "grips/actions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "grips/errors.hpp"

namespace grips {

namespace {

// Image of a universe vertex under left multiplication by h; nullopt when
// the image is not representable inside the truncation.
std::optional<int> vertex_image(const Universe& u, const Word& h, int vtx) {
  const GroupModel& m = u.model();
  if (u.is_element_vertex(vtx)) return u.find_element(mul(m, h, u.element(vtx)));
  const CosetVertex& cv = u.coset(u.coset_index(vtx));
  Word rep = m.coset_rep(cv.lambda, mul(m, h, cv.rep));
  std::optional<int> k = u.find_coset(cv.lambda, rep);
  if (!k) return std::nullopt;
  return u.coset_vertex_id(*k);
}

[[noreturn]] void throw_truncation(const Universe& u, const Word& h, int vtx) {
  throw truncation_error("left translate of " + u.vertex_label(vtx) + " by " +
                         u.model().word_str(h) + " leaves the universe");
}

FiniteSubgroup subgroup_from_elements(const GroupModel& m,
                                      std::vector<Word> elements,
                                      std::vector<Word> generators) {
  std::sort(elements.begin(), elements.end(), shortlex_less);
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  FiniteSubgroup H;
  H.elements = std::move(elements);
  for (Word& g : generators) H.generators.push_back(m.normalize(g));
  return H;
}

}  // namespace

FiniteSubgroup make_subgroup(const GroupModel& m, std::vector<Word> generators,
                             std::size_t cap) {
  for (Word& g : generators) g = m.normalize(g);
  std::optional<std::vector<Word>> closure =
      try_subgroup_closure(m, generators, cap);
  if (!closure)
    throw input_error("subgroup closure is not finite within the cap of " +
                      std::to_string(cap) + " elements");
  return subgroup_from_elements(m, std::move(*closure), std::move(generators));
}

std::vector<int> left_action_permutation(const Universe& u, const Word& h) {
  std::vector<int> perm(u.vertex_count());
  for (int v = 0; v < u.vertex_count(); ++v) {
    std::optional<int> img = vertex_image(u, h, v);
    if (!img) throw_truncation(u, h, v);
    perm[v] = *img;
  }
  return perm;
}

std::vector<int> orbit(const Universe& u, const FiniteSubgroup& H,
                       int vertex) {
  if (vertex < 0 || vertex >= u.vertex_count())
    throw input_error("orbit base vertex id out of range");
  std::vector<int> out;
  for (const Word& h : H.elements) {
    std::optional<int> img = vertex_image(u, h, vertex);
    if (!img) throw_truncation(u, h, vertex);
    out.push_back(*img);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuasiCentreResult radius_and_quasicentre(const Universe& u,
                                         const std::vector<int>& U) {
  if (U.empty()) throw input_error("quasi-centre of an empty set");
  for (int x : U)
    if (x < 0 || x >= u.vertex_count())
      throw input_error("quasi-centre input vertex id out of range");

  SDistCache dist(u);
  QuasiCentreResult res;
  res.rho = u.radius() + 2;  // above any reportable value
  std::vector<int> ecc(u.vertex_count(), 0);
  std::vector<char> ecc_exact(u.vertex_count(), 1);
  for (int z = 0; z < u.vertex_count(); ++z) {
    for (int x : U) {
      DistanceResult d = dist(z, x);
      ecc[z] = std::max(ecc[z], d.value);
      if (!d.exact) ecc_exact[z] = 0;
    }
    res.rho = std::min(res.rho, ecc[z]);
  }
  for (int z = 0; z < u.vertex_count(); ++z)
    if (ecc[z] == res.rho) res.centre.push_back(z);

  // A vertex with fully enumerated members (an element, or a coset whose
  // whole member list is known) yields lower-bound distances even when
  // inexact: no member pair resolved means every pair is further than the
  // radius.  Such candidates are safely ruled out once one certified-or-
  // lower-bound distance already exceeds rho; the result counts as exact
  // when every candidate is either certified or safely ruled out.
  auto fully_known = [&u](int v) {
    return u.is_element_vertex(v) || u.coset_members_known(u.coset_index(v));
  };
  bool all_safe = true;
  for (int z = 0; z < u.vertex_count() && all_safe; ++z) {
    if (ecc_exact[z]) continue;
    if (ecc[z] == res.rho) {
      all_safe = false;  // an uncertified distance feeds the centre itself
      break;
    }
    bool excluded = false;
    for (int x : U) {
      DistanceResult d = dist(z, x);
      if (d.value <= res.rho) continue;
      if (d.exact || (fully_known(z) && fully_known(x))) {
        excluded = true;
        break;
      }
    }
    all_safe = excluded;
  }
  res.distances_exact = all_safe;

  // Eccentricity lower bound for any vertex outside the truncation: each
  // x in U pins it at least radius+1 minus x's deepest layer, provided
  // every member of x is inside the ball.
  int min_bound = u.radius() + 1;
  bool boundable = true;
  for (int x : U) {
    int b;
    if (u.is_element_vertex(x)) {
      b = u.layer(x);
    } else {
      int k = u.coset_index(x);
      if (!u.coset_members_known(k)) {
        boundable = false;
        break;
      }
      b = 0;
      bool all_inside = true;
      for (const Word& w : u.coset_all_members(k)) {
        std::optional<int> vid = u.find_element(w);
        if (!vid) {
          all_inside = false;
          break;
        }
        b = std::max(b, u.layer(*vid));
      }
      if (!all_inside) {
        boundable = false;
        break;
      }
    }
    min_bound = std::min(min_bound, u.radius() + 1 - b);
  }
  res.coverage_complete = boundable && min_bound > res.rho;
  return res;
}

FixedCliqueResult fixed_clique(const Universe& u, const Graph& gamma_n,
                               const FiniteSubgroup& H) {
  if (gamma_n.size() != u.vertex_count())
    throw input_error("graph and universe vertex counts differ");
  FixedCliqueResult res;
  for (int base = 0; base < u.vertex_count(); ++base) {
    std::vector<int> U;
    try {
      U = orbit(u, H, base);
    } catch (const truncation_error&) {
      continue;  // this probe leaves the truncation; try the next base
    }
    QuasiCentreResult qc = radius_and_quasicentre(u, U);
    const std::vector<int>& C = qc.centre;
    bool ok = true;
    for (std::size_t i = 0; i < C.size() && ok; ++i)
      for (std::size_t j = i + 1; j < C.size() && ok; ++j)
        ok = gamma_n.has_edge(C[i], C[j]);
    for (std::size_t i = 0; i < C.size() && ok; ++i)
      for (const Word& h : H.elements) {
        std::optional<int> img = vertex_image(u, h, C[i]);
        if (!img || !std::binary_search(C.begin(), C.end(), *img)) {
          ok = false;
          break;
        }
      }
    if (ok) {
      res.found = true;
      res.clique = C;
      res.base = base;
      return res;
    }
  }
  return res;
}

StabilizerResult simplex_stabilizer(const Universe& u,
                                    const std::vector<int>& simplex) {
  if (simplex.size() < 2)
    throw input_error("stabilizer needs a simplex with at least two vertices");
  std::vector<int> verts = simplex;
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    throw input_error("simplex vertices must be distinct");
  for (int v : verts)
    if (v < 0 || v >= u.vertex_count())
      throw input_error("simplex vertex id out of range");

  const GroupModel& m = u.model();

  // Candidate stabilizing elements.  A stabilizer maps the anchor vertex to
  // a simplex vertex of the same type, which pins it down exactly when the
  // anchor is a group element (h = target * anchor^-1) or a coset with a
  // fully known peripheral member list (h in target_rep * P * anchor_rep^-1).
  std::vector<Word> candidates;
  bool complete = false;
  if (u.is_element_vertex(verts.front())) {
    Word anchor_inv = inv_nf(m, u.element(verts.front()));
    for (int v : verts) {
      if (!u.is_element_vertex(v)) break;
      candidates.push_back(mul(m, u.element(v), anchor_inv));
    }
    complete = true;
  } else {
    int k0 = u.coset_index(verts.front());
    const CosetVertex& anchor = u.coset(k0);
    if (u.coset_members_known(k0)) {
      // P's own element list is the member list of its identity coset.
      std::optional<int> kp =
          u.find_coset(anchor.lambda, m.coset_rep(anchor.lambda, Word{}));
      if (kp && u.coset_members_known(*kp)) {
        Word anchor_inv = inv_nf(m, anchor.rep);
        for (int v : verts) {
          const CosetVertex& target = u.coset(u.coset_index(v));
          if (target.lambda != anchor.lambda) continue;
          for (const Word& p : u.coset_all_members(*kp))
            candidates.push_back(
                mul(m, target.rep, mul(m, p, anchor_inv)));
        }
        complete = true;
      }
    }
    if (!complete)
      for (int v = 0; v < u.ball_size(); ++v)
        candidates.push_back(u.element(v));
  }

  std::vector<Word> stab;
  for (const Word& h : candidates) {
    bool fixes = true;
    for (int v : verts) {
      std::optional<int> img = vertex_image(u, h, v);
      if (!img || !std::binary_search(verts.begin(), verts.end(), *img)) {
        fixes = false;
        break;
      }
    }
    if (fixes) stab.push_back(h);
  }
  std::sort(stab.begin(), stab.end(), shortlex_less);
  stab.erase(std::unique(stab.begin(), stab.end()), stab.end());

  StabilizerResult res;
  res.complete = complete;
  res.group = subgroup_from_elements(m, stab, stab);
  return res;
}

namespace {

std::optional<int> element_order(const GroupModel& m, const Word& g,
                                 int max_order) {
  Word x = g;
  for (int k = 1; k <= max_order; ++k) {
    if (x.empty()) return k;
    x = mul(m, x, g);
  }
  return std::nullopt;
}

}  // namespace

std::vector<SubgroupReport> enumerate_finite_subgroups(const Universe& u,
                                                       int max_order) {
  if (max_order < 1) throw input_error("max_order must be at least 1");
  const GroupModel& m = u.model();

  std::vector<Word> torsion;
  for (int v = 0; v < u.ball_size(); ++v) {
    const Word& g = u.element(v);
    if (g.empty()) continue;
    if (element_order(m, g, max_order)) torsion.push_back(g);
  }

  // Grow subgroups from torsion elements, capped at max_order elements.
  std::set<std::vector<Word>> seen;
  std::vector<std::vector<Word>> queue;
  auto push = [&](std::vector<Word> elems) {
    std::sort(elems.begin(), elems.end(), shortlex_less);
    if (seen.insert(elems).second) queue.push_back(std::move(elems));
  };
  push({Word{}});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<Word> base = queue[qi];
    for (const Word& t : torsion) {
      if (std::binary_search(base.begin(), base.end(), t, shortlex_less))
        continue;
      std::vector<Word> gens = base;
      gens.push_back(t);
      std::optional<std::vector<Word>> closure =
          try_subgroup_closure(m, gens, static_cast<std::size_t>(max_order));
      if (!closure) continue;  // escapes the order cap
      push(std::move(*closure));
    }
  }

  bool ball_is_whole_group =
      m.order().has_value() &&
      static_cast<std::size_t>(u.ball_size()) == *m.order();

  std::vector<SubgroupReport> out;
  for (const std::vector<Word>& elems : seen) {
    SubgroupReport rep;
    rep.group = subgroup_from_elements(m, elems, elems);
    rep.in_ball = true;
    for (const Word& w : elems)
      if (!u.find_element(w)) rep.in_ball = false;
    if (elems.size() == 1) {
      rep.classification = "trivial";
      out.push_back(std::move(rep));
      continue;
    }
    bool classified = false;
    for (int v = 0; v < u.ball_size() && !classified; ++v) {
      const Word& c = u.element(v);
      Word c_inv = inv_nf(m, c);
      for (int lambda = 0; lambda < m.peripheral_count() && !classified;
           ++lambda) {
        bool inside = true;
        for (const Word& h : rep.group.elements) {
          Word conj = mul(m, c_inv, mul(m, h, c));
          if (!m.peripheral_contains(lambda, conj)) {
            inside = false;
            break;
          }
        }
        if (inside) {
          rep.classification = "peripheral-conjugate";
          rep.peripheral = lambda;
          rep.conjugator = c;
          classified = true;
        }
      }
    }
    if (!classified)
      rep.classification =
          ball_is_whole_group ? "exceptional" : "exceptional-in-truncation";
    out.push_back(std::move(rep));
  }

  std::sort(out.begin(), out.end(),
            [](const SubgroupReport& a, const SubgroupReport& b) {
              if (a.group.elements.size() != b.group.elements.size())
                return a.group.elements.size() < b.group.elements.size();
              return std::lexicographical_compare(
                  a.group.elements.begin(), a.group.elements.end(),
                  b.group.elements.begin(), b.group.elements.end(),
                  shortlex_less);
            });
  return out;
}

namespace {

// The permutations must cover every vertex id used by the complex.
void check_permutations(const SimplicialComplex& c,
                        const std::vector<std::vector<int>>& gens) {
  int max_id = -1;
  if (c.dim() >= 0)
    for (const Simplex& s : c.simplices(0)) max_id = std::max(max_id, s[0]);
  for (const std::vector<int>& p : gens) {
    if (static_cast<int>(p.size()) <= max_id)
      throw input_error("permutation is smaller than the vertex range");
    std::vector<char> hit(p.size(), 0);
    for (int v : p) {
      if (v < 0 || v >= static_cast<int>(p.size()) || hit[v])
        throw input_error("vertex map is not a permutation");
      hit[v] = 1;
    }
  }
}

Simplex apply_perm(const std::vector<int>& p, const Simplex& s) {
  Simplex img;
  img.reserve(s.size());
  for (int v : s) img.push_back(p[v]);
  std::sort(img.begin(), img.end());
  return img;
}

}  // namespace

std::vector<Simplex> invariant_simplices(
    const SimplicialComplex& c, const std::vector<std::vector<int>>& gens) {
  check_permutations(c, gens);
  // Preservation first: every generator must map simplices to simplices.
  for (int d = 0; d <= c.dim(); ++d)
    for (const Simplex& s : c.simplices(d))
      for (const std::vector<int>& p : gens)
        if (!c.contains(apply_perm(p, s))) {
          std::string verts;
          for (std::size_t i = 0; i < s.size(); ++i)
            verts += (i ? "," : "") + std::to_string(s[i]);
          throw input_error(
              "action does not preserve the complex: image of simplex {" +
              verts + "} is missing");
        }
  // A simplex fixed by every generator is fixed by the whole group.
  std::vector<Simplex> out;
  for (int d = 0; d <= c.dim(); ++d)
    for (const Simplex& s : c.simplices(d)) {
      bool fixed = true;
      for (const std::vector<int>& p : gens)
        if (apply_perm(p, s) != s) {
          fixed = false;
          break;
        }
      if (fixed) out.push_back(s);
    }
  return out;
}

SimplicialComplex fixed_point_complex(
    const SimplicialComplex& c, const std::vector<std::vector<int>>& gens) {
  std::vector<Simplex> inv = invariant_simplices(c, gens);
  if (inv.empty()) return SimplicialComplex{};
  // Chains of nested invariant simplices = cliques of the comparability
  // graph (containment restricted to a chain is total).
  Graph comp(static_cast<int>(inv.size()));
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      const Simplex& small = inv[i].size() <= inv[j].size() ? inv[i] : inv[j];
      const Simplex& big = inv[i].size() <= inv[j].size() ? inv[j] : inv[i];
      if (small.size() < big.size() &&
          std::includes(big.begin(), big.end(), small.begin(), small.end()))
        comp.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  return clique_complex(comp, std::max(1, c.dim()));
}

}  // namespace grips
