#include "grips/geometry.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <string>

#include "grips/errors.hpp"
#include "grips/rng.hpp"

namespace grips {

namespace {

void check_vertex(const Universe& u, int v) {
  if (v < 0 || v >= u.vertex_count())
    throw input_error("vertex id out of range");
}

void check_window_params(int epsilon, int R) {
  if (epsilon < 1 || R < 1)
    throw input_error("epsilon and R must be positive");
}

// Member words of a vertex.  Group elements carry themselves; cosets carry
// their full member list when the peripheral is finite (words may lie outside
// the ball), otherwise only the members the ball happens to meet.
struct Members {
  std::vector<Word> words;  // shortlex sorted
  bool complete = true;
};

Members members_of(const Universe& u, int v) {
  Members m;
  if (u.is_element_vertex(v)) {
    m.words.push_back(u.element(v));
    return m;
  }
  int k = u.coset_index(v);
  if (u.coset_members_known(k)) {
    m.words = u.coset_all_members(k);
    return m;
  }
  for (int vid : u.coset_ball_members(k)) m.words.push_back(u.element(vid));
  m.complete = false;
  return m;
}

bool phantom_free(const Universe& u, int v) {
  return u.is_element_vertex(v) || u.coset_members_known(u.coset_index(v));
}

Members complete_members(const Universe& u, int v) {
  Members m = members_of(u, v);
  if (!m.complete)
    throw truncation_error("coset " + u.vertex_label(v) +
                           " has members beyond the truncation");
  return m;
}

enum class Prox : unsigned char { close, far, uncertain };

// Decides |x,y|_S <= threshold under truncation semantics.  A resolved value
// within the threshold certifies closeness even when inexact (resolved values
// are upper bounds); farness needs exactness, or the certified lower bound
// radius+1 available for phantom-free member views.
Prox proximity(const Universe& u, SDistCache& dist, int x, int y,
               int threshold) {
  DistanceResult d = dist(x, y);
  if (d.value <= threshold && (d.exact || d.value <= u.radius()))
    return Prox::close;
  if (d.exact) return Prox::far;
  if (d.value == u.radius() + 1 && threshold <= u.radius() &&
      phantom_free(u, x) && phantom_free(u, y))
    return Prox::far;
  return Prox::uncertain;
}

int exact_distance(const Universe& u, SDistCache& dist, int x, int y) {
  DistanceResult d = dist(x, y);
  if (!d.exact)
    throw truncation_error("distance between " + u.vertex_label(x) + " and " +
                           u.vertex_label(y) + " is not certified at radius " +
                           std::to_string(u.radius()));
  return d.value;
}

// In-ball members as element ids, ascending (= shortlex).
std::vector<int> ball_members(const Universe& u, int v) {
  if (u.is_element_vertex(v)) return {v};
  return u.coset_ball_members(u.coset_index(v));
}

// Depth-first geodesic walk from a0 to b0 through the ball, preferring the
// shortlex-least next vertex.  Vertices never repeat: the certified distance
// to b0 drops by one per step, so the dead set is keyed by vertex alone.
std::optional<std::vector<int>> walk(const Universe& u, int a0, int b0,
                                     int len) {
  const Word& target = u.element(b0);
  const int syms = 2 * u.model().alphabet_size();
  std::vector<char> dead(u.ball_size(), 0);
  std::vector<int> path{a0};
  std::function<bool(int, int)> go = [&](int cur, int remaining) {
    if (remaining == 0) return true;
    std::set<int> cands;
    for (int sym = 0; sym < syms; ++sym) {
      int y = u.step(cur, sym);
      if (y < 0 || dead[y]) continue;
      DistanceResult e = u.element_distance(u.element(y), target);
      if (e.exact && e.value == remaining - 1) cands.insert(y);
    }
    for (int y : cands) {
      path.push_back(y);
      if (go(y, remaining - 1)) return true;
      path.pop_back();
    }
    dead[cur] = 1;
    return false;
  };
  if (!go(a0, len)) return std::nullopt;
  return path;
}

// Degenerate one-vertex path used for coinciding triangle corners; sits at
// the shortlex-least in-ball member.
GeodesicPath point_path(const Universe& u, int v) {
  if (u.is_element_vertex(v)) return {v, v, {v}};
  return {v, v, {u.coset_ball_members(u.coset_index(v)).front()}};
}

GeodesicPath side(const Universe& u, SDistCache& dist, int x, int y) {
  return x == y ? point_path(u, x) : geodesic(u, dist, x, y);
}

// Deep cosets of index i on the vertex sequence, ascending by id; nullopt
// when some required closeness cannot be decided at this radius.
std::optional<std::vector<int>> deep_cosets_at(const Universe& u,
                                               SDistCache& dist,
                                               const std::vector<int>& verts,
                                               int i, int epsilon, int R) {
  std::vector<int> out;
  int len = static_cast<int>(verts.size()) - 1;
  if (i < R || i > len - R) return out;
  for (int k = 0; k < u.coset_count(); ++k) {
    bool deep = true;
    bool unsure = false;
    for (int j = i - R; j <= i + R; ++j) {
      Prox s = proximity(u, dist, verts[j], u.coset_vertex_id(k), epsilon);
      if (s == Prox::far) {
        deep = false;
        break;
      }
      if (s == Prox::uncertain) unsure = true;
    }
    if (deep && unsure) return std::nullopt;
    if (deep) out.push_back(u.coset_vertex_id(k));
  }
  return out;
}

// Certifies that every geodesic realizing the distance between the two member
// views stays inside the ball, so position scans see every occupant.  An
// achieving pair with a member outside the ball, or one whose layers admit
// geodesics beyond the certified radius, voids that guarantee.
void require_contained(const Universe& u, const Members& mx, const Members& my,
                       int d, const std::string& what) {
  for (const Word& aw : mx.words)
    for (const Word& bw : my.words) {
      DistanceResult leg = u.element_distance(aw, bw);
      if (!leg.exact || leg.value != d) continue;
      auto ia = u.find_element(aw);
      auto ib = u.find_element(bw);
      if (!ia || !ib || !u.geodesic_contained(u.layer(*ia), u.layer(*ib), d))
        throw truncation_error("geodesics " + what +
                               " may leave the ball at radius " +
                               std::to_string(u.radius()));
    }
}

}  // namespace

void validate(const GeometryParams& params) {
  if (params.epsilon < 1 || params.R < 1 || params.D < 1 || params.K < 1)
    throw input_error("geometry constants must be positive");
  if (params.D < params.epsilon)
    throw input_error("thinness constant D must be at least epsilon");
}

GeodesicPath geodesic(const Universe& u, SDistCache& dist, int a, int b) {
  check_vertex(u, a);
  check_vertex(u, b);
  if (a == b) {
    if (u.is_coset_vertex(a))
      throw input_error(
          "geodesic endpoints may coincide only on a group element");
    return GeodesicPath{a, b, {a}};
  }
  DistanceResult d = dist(a, b);
  if (!d.exact)
    throw truncation_error("distance between " + u.vertex_label(a) + " and " +
                           u.vertex_label(b) + " is not certified at radius " +
                           std::to_string(u.radius()));
  for (int a0 : ball_members(u, a))
    for (int b0 : ball_members(u, b)) {
      DistanceResult leg = u.element_distance(u.element(a0), u.element(b0));
      if (!leg.exact || leg.value != d.value) continue;
      if (auto path = walk(u, a0, b0, d.value))
        return GeodesicPath{a, b, std::move(*path)};
    }
  throw truncation_error("no geodesic from " + u.vertex_label(a) + " to " +
                         u.vertex_label(b) + " stays inside the ball");
}

std::vector<int> geodesic_interval(const Universe& u, SDistCache& dist, int a,
                                   int b) {
  check_vertex(u, a);
  check_vertex(u, b);
  if (a == b) {
    if (u.is_coset_vertex(a))
      throw input_error(
          "interval endpoints may coincide only on a group element");
    return {a};
  }
  int d = exact_distance(u, dist, a, b);
  Members ma = complete_members(u, a);
  Members mb = complete_members(u, b);
  std::vector<int> out;
  for (int x = 0; x < u.ball_size(); ++x) {
    const Word& xw = u.element(x);
    bool in = false;
    for (const Word& aw : ma.words) {
      DistanceResult la = u.element_distance(aw, xw);
      if (!la.exact || la.value > d) continue;
      for (const Word& bw : mb.words) {
        DistanceResult lb = u.element_distance(xw, bw);
        if (lb.exact && la.value + lb.value == d) {
          in = true;
          break;
        }
      }
      if (in) break;
    }
    if (in) out.push_back(x);
  }
  return out;
}

DeepClassification classify_vertices(const Universe& u, SDistCache& dist,
                                     const GeodesicPath& p,
                                     const GeometryParams& params) {
  check_window_params(params.epsilon, params.R);
  if (p.vertices.empty()) throw input_error("empty geodesic path");
  DeepClassification out;
  int len = p.length();
  out.tags.assign(len + 1, VertexTag{});
  for (int i = 0; i <= len; ++i) {
    auto dc = deep_cosets_at(u, dist, p.vertices, i, params.epsilon, params.R);
    if (!dc)
      throw truncation_error(
          "deep-vertex classification needs distances this radius cannot "
          "certify");
    if (dc->empty()) continue;
    out.tags[i] = VertexTag{true, dc->front()};
    if (dc->size() >= 2 && !out.double_deep) {
      out.double_deep = true;
      out.double_deep_index = i;
      out.double_deep_cosets = {(*dc)[0], (*dc)[1]};
    }
  }
  return out;
}

REstimate estimate_R(const Universe& u, SDistCache& dist, int epsilon,
                     const SampleSpec& spec, std::uint64_t seed) {
  if (epsilon < 1) throw input_error("epsilon must be positive");
  REstimate out;
  out.exhaustive = spec.exhaustive;
  int best = 0;

  // Per scanned geodesic, the largest window radius keeping one coset within
  // epsilon, capped by the distance to the nearer path end; the second
  // largest cap over cosets at one index is the largest R still exhibiting a
  // double-deep vertex there.
  auto scan = [&](int a, int b) {
    GeodesicPath p;
    try {
      p = geodesic(u, dist, a, b);
    } catch (const truncation_error&) {
      ++out.skipped;
      return;
    }
    int len = p.length();
    int nw = u.coset_count();
    std::vector<std::vector<char>> close(nw);
    for (int k = 0; k < nw; ++k) {
      close[k].assign(len + 1, 0);
      for (int j = 0; j <= len; ++j) {
        Prox s =
            proximity(u, dist, p.vertices[j], u.coset_vertex_id(k), epsilon);
        if (s == Prox::uncertain) {
          ++out.skipped;
          return;
        }
        close[k][j] = (s == Prox::close);
      }
    }
    for (int i = 1; i < len; ++i) {
      int top1 = 0, top2 = 0;
      for (int k = 0; k < nw; ++k) {
        if (!close[k][i]) continue;
        int lim = std::min(i, len - i);
        int t = 0;
        while (t < lim && close[k][i - t - 1] && close[k][i + t + 1]) ++t;
        if (t >= top1) {
          top2 = top1;
          top1 = t;
        } else if (t > top2) {
          top2 = t;
        }
      }
      best = std::max(best, top2);
    }
    ++out.geodesics_scanned;
  };

  int n = u.vertex_count();
  if (spec.exhaustive) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) scan(a, b);
  } else {
    Rng rng = Rng(seed).substream("estimate-R");
    for (long long s = 0; s < spec.count && n >= 2; ++s) {
      int a = rng.below(n);
      int b = rng.below(n);
      while (b == a) b = rng.below(n);
      scan(a, b);
    }
  }
  out.R = best + 1;
  return out;
}

TriangleDefect thin_triangle_check(const Universe& u, SDistCache& dist, int a,
                                   int b, int c, int i,
                                   const GeometryParams& params) {
  check_window_params(params.epsilon, params.R);
  check_vertex(u, a);
  check_vertex(u, b);
  check_vertex(u, c);
  if (a == b) throw input_error("thin triangle sides require a != b");
  GeodesicPath pab = geodesic(u, dist, a, b);
  int len = pab.length();
  if (i < 0 || i > len)
    throw input_error("index " + std::to_string(i) +
                      " lies outside the side from " + u.vertex_label(a) +
                      " to " + u.vertex_label(b));
  GeodesicPath pac = side(u, dist, a, c);
  GeodesicPath pbc = side(u, dist, b, c);
  auto deep =
      deep_cosets_at(u, dist, pab.vertices, i, params.epsilon, params.R);
  if (!deep)
    throw truncation_error(
        "deep-vertex classification needs distances this radius cannot "
        "certify");
  TriangleDefect out;
  out.z_deep = !deep->empty();
  out.z = out.z_deep ? deep->front() : pab.vertices[i];
  int x = pac.vertices[std::min(i, pac.length())];
  int y = pbc.vertices[std::min(len - i, pbc.length())];
  out.defect = std::min(exact_distance(u, dist, out.z, x),
                        exact_distance(u, dist, out.z, y));
  return out;
}

namespace {

// Elements able to occupy each position on some geodesic realizing the
// distance between two vertices, with the guarantee that nothing outside the
// ball can (see require_contained).
struct PositionSets {
  int len = 0;
  std::vector<std::vector<int>> at;
};

PositionSets position_sets(const Universe& u, SDistCache& dist, int x, int y) {
  int d = x == y ? 0 : exact_distance(u, dist, x, y);
  Members mx = complete_members(u, x);
  Members my = complete_members(u, y);
  require_contained(u, mx, my, d,
                    "from " + u.vertex_label(x) + " to " + u.vertex_label(y));
  PositionSets ps;
  ps.len = d;
  std::vector<std::set<int>> levels(d + 1);
  for (int v = 0; v < u.ball_size(); ++v) {
    const Word& vw = u.element(v);
    for (const Word& aw : mx.words) {
      DistanceResult la = u.element_distance(aw, vw);
      if (!la.exact || la.value > d) continue;
      for (const Word& bw : my.words) {
        DistanceResult lb = u.element_distance(vw, bw);
        if (lb.exact && la.value + lb.value == d) {
          levels[la.value].insert(v);
          break;
        }
      }
    }
  }
  ps.at.reserve(d + 1);
  for (auto& s : levels) ps.at.emplace_back(s.begin(), s.end());
  return ps;
}

}  // namespace

WorstCaseDefect thin_triangle_worst_case(const Universe& u, SDistCache& dist,
                                         int a, int b, int c, int i,
                                         const GeometryParams& params,
                                         long long node_budget) {
  check_window_params(params.epsilon, params.R);
  check_vertex(u, a);
  check_vertex(u, b);
  check_vertex(u, c);
  if (a == b) throw input_error("thin triangle sides require a != b");
  PositionSets ab = position_sets(u, dist, a, b);
  int len = ab.len;
  if (i < 0 || i > len)
    throw input_error("index " + std::to_string(i) +
                      " lies outside the side from " + u.vertex_label(a) +
                      " to " + u.vertex_label(b));
  PositionSets ac = position_sets(u, dist, a, c);
  PositionSets bc = position_sets(u, dist, b, c);
  const std::vector<int>& X = ac.at[std::min(i, ac.len)];
  const std::vector<int>& Y = bc.at[std::min(len - i, bc.len)];

  WorstCaseDefect out;
  std::set<int> zset;
  const int R = params.R;
  if (i < R || i > len - R) {
    // The range condition fails on every geodesic: always a transition.
    for (int v : ab.at[i]) zset.insert(v);
  } else {
    long long nodes = 0;
    bool exhausted = false;
    std::vector<int> win;
    const int lo = i - R, hi = i + R;
    std::function<void(int)> dfs = [&](int pos) {
      if (exhausted) return;
      if (++nodes > node_budget) {
        exhausted = true;
        return;
      }
      if (pos > hi) {
        ++out.windows_seen;
        std::vector<int> deeps;
        for (int k = 0; k < u.coset_count(); ++k) {
          bool deep = true;
          for (int vv : win) {
            Prox s =
                proximity(u, dist, vv, u.coset_vertex_id(k), params.epsilon);
            if (s == Prox::far) {
              deep = false;
              break;
            }
            if (s == Prox::uncertain)
              throw truncation_error(
                  "deep-vertex classification needs distances this radius "
                  "cannot certify");
          }
          if (deep) deeps.push_back(u.coset_vertex_id(k));
        }
        if (deeps.empty())
          zset.insert(win[i - lo]);
        else
          zset.insert(deeps.begin(), deeps.end());
        return;
      }
      for (int v : ab.at[pos]) {
        if (!win.empty()) {
          DistanceResult e =
              u.element_distance(u.element(win.back()), u.element(v));
          if (!e.exact || e.value != 1) continue;
        }
        win.push_back(v);
        dfs(pos + 1);
        win.pop_back();
        if (exhausted) return;
      }
    };
    dfs(lo);
    out.complete = !exhausted;
  }

  int best = 0;
  for (int z : zset) {
    int over_x = 0, over_y = 0;
    for (int x : X) over_x = std::max(over_x, exact_distance(u, dist, z, x));
    for (int y : Y) over_y = std::max(over_y, exact_distance(u, dist, z, y));
    best = std::max(best, std::min(over_x, over_y));
  }
  out.defect = best;
  return out;
}

DEstimate estimate_D(const Universe& u, SDistCache& dist, int epsilon, int R,
                     const SampleSpec& spec, std::uint64_t seed) {
  check_window_params(epsilon, R);
  DEstimate out;
  out.exhaustive = spec.exhaustive;
  int n = u.vertex_count();

  std::map<std::pair<int, int>, std::optional<GeodesicPath>> paths;
  auto side_path = [&](int x, int y) -> const std::optional<GeodesicPath>& {
    auto key = std::make_pair(x, y);
    auto it = paths.find(key);
    if (it == paths.end()) {
      std::optional<GeodesicPath> p;
      try {
        p = side(u, dist, x, y);
      } catch (const truncation_error&) {
      }
      it = paths.emplace(key, std::move(p)).first;
    }
    return it->second;
  };

  // One measurement; z precomputed per (pair, index), nullopt when the
  // classification is uncertified.
  auto measure = [&](const GeodesicPath& pab, const std::optional<int>& z,
                     int c, int i) {
    if (!z) {
      ++out.skipped;
      return;
    }
    const auto& pac = side_path(pab.a, c);
    const auto& pbc = side_path(pab.b, c);
    if (!pac || !pbc) {
      ++out.skipped;
      return;
    }
    int x = pac->vertices[std::min(i, pac->length())];
    int y = pbc->vertices[std::min(pab.length() - i, pbc->length())];
    DistanceResult d1 = dist(*z, x);
    DistanceResult d2 = dist(*z, y);
    if (!d1.exact || !d2.exact) {
      ++out.skipped;
      return;
    }
    int defect = std::min(d1.value, d2.value);
    ++out.histogram[defect];
    ++out.measurements;
    out.D = std::max(out.D, defect);
  };

  auto z_at = [&](const GeodesicPath& pab, int i) -> std::optional<int> {
    auto dc = deep_cosets_at(u, dist, pab.vertices, i, epsilon, R);
    if (!dc) return std::nullopt;
    return dc->empty() ? pab.vertices[i] : dc->front();
  };

  if (spec.exhaustive) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& pab = side_path(a, b);
        if (!pab) {
          ++out.skipped;
          continue;
        }
        std::vector<std::optional<int>> zs(pab->length() + 1);
        for (int i = 0; i <= pab->length(); ++i) zs[i] = z_at(*pab, i);
        for (int c = 0; c < n; ++c)
          for (int i = 0; i <= pab->length(); ++i)
            measure(*pab, zs[i], c, i);
      }
  } else {
    Rng rng = Rng(seed).substream("estimate-D");
    for (long long s = 0; s < spec.count && n >= 2; ++s) {
      int a = rng.below(n);
      int b = rng.below(n);
      while (b == a) b = rng.below(n);
      int c = rng.below(n);
      const auto& pab = side_path(a, b);
      if (!pab) {
        ++out.skipped;
        continue;
      }
      int i = rng.below(pab->length() + 1);
      measure(*pab, z_at(*pab, i), c, i);
    }
  }
  return out;
}

ConvexityResult is_mu_convex(const Universe& u, SDistCache& dist,
                             const std::vector<int>& U, int base, int mu,
                             int epsilon) {
  if (mu < 1 || epsilon < 1)
    throw input_error("mu and epsilon must be positive");
  if (U.empty()) throw input_error("convexity requires a nonempty set");
  std::vector<int> set = U;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (int v : set) check_vertex(u, v);
  auto in_set = [&](int v) {
    return std::binary_search(set.begin(), set.end(), v);
  };
  if (!in_set(base)) throw input_error("base vertex must belong to the set");

  Members mbase = complete_members(u, base);
  for (int up : set) {
    if (up == base) continue;
    int len = exact_distance(u, dist, base, up);
    Members mup = complete_members(u, up);
    require_contained(
        u, mbase, mup, len,
        "from " + u.vertex_label(base) + " to " + u.vertex_label(up));
    if (len < mu) continue;
    for (int x = 0; x < u.ball_size(); ++x) {
      // Least position of x over all geodesics from base to up.
      int jmin = INT_MAX;
      const Word& xw = u.element(x);
      for (const Word& aw : mbase.words) {
        DistanceResult la = u.element_distance(aw, xw);
        if (!la.exact || la.value > len || la.value >= jmin) continue;
        for (const Word& bw : mup.words) {
          DistanceResult lb = u.element_distance(xw, bw);
          if (lb.exact && la.value + lb.value == len) {
            jmin = la.value;
            break;
          }
        }
      }
      if (jmin > len - mu) continue;
      if (!in_set(x)) return {false, ConvexityViolation{up, x, x}};
      for (int k = 0; k < u.coset_count(); ++k) {
        int w = u.coset_vertex_id(k);
        if (in_set(w)) continue;
        Prox s = proximity(u, dist, x, w, epsilon);
        if (s == Prox::uncertain)
          throw truncation_error("cannot decide whether " + u.vertex_label(w) +
                                 " comes within " + std::to_string(epsilon) +
                                 " of " + u.vertex_label(x));
        if (s == Prox::close) return {false, ConvexityViolation{up, x, w}};
      }
    }
  }
  return {true, std::nullopt};
}

HullResult r_hull(const Universe& u, SDistCache& dist,
                  const std::vector<int>& U, int r, int epsilon) {
  if (U.empty()) throw input_error("hull of an empty set");
  if (r < 0 || epsilon < 1)
    throw input_error("hull radius must be nonnegative and epsilon positive");
  for (int v : U) check_vertex(u, v);
  HullResult out;
  for (int v = 0; v < u.vertex_count(); ++v) {
    int bound = u.is_coset_vertex(v) ? r + epsilon : r;
    bool in = true, sure = true;
    for (int q : U) {
      Prox s = proximity(u, dist, v, q, bound);
      if (s == Prox::far) {
        in = false;
        break;
      }
      if (s == Prox::uncertain) sure = false;
    }
    if (!in) continue;
    (sure ? out.members : out.uncertain).push_back(v);
  }
  return out;
}

}  // namespace grips
