#include <algorithm>
#include <set>

#include "doctest.h"
#include "grips/errors.hpp"
#include "grips/rips.hpp"
#include "grips/universe.hpp"

using namespace grips;

namespace {

std::unique_ptr<GroupModel> make_dinfty() {
  std::vector<std::unique_ptr<GroupModel>> fs;
  fs.push_back(make_cyclic_model(2, 'a'));
  fs.push_back(make_cyclic_model(2, 'b'));
  auto m = make_free_product(std::move(fs));
  m->add_peripheral({PeripheralSpec::Kind::factor, 0, {}});
  m->add_peripheral({PeripheralSpec::Kind::factor, 1, {}});
  return m;
}

std::unique_ptr<GroupModel> make_z2z3() {
  std::vector<std::unique_ptr<GroupModel>> fs;
  fs.push_back(make_cyclic_model(2, 'a'));
  fs.push_back(make_cyclic_model(3, 'b'));
  auto m = make_free_product(std::move(fs));
  m->add_peripheral({PeripheralSpec::Kind::factor, 0, {}});
  m->add_peripheral({PeripheralSpec::Kind::factor, 1, {}});
  return m;
}

int vtx_of(const Universe& u, const char* w) {
  auto id = u.find_element(u.model().normalize(u.model().parse(w)));
  REQUIRE(id.has_value());
  return *id;
}

int coset_vtx(const Universe& u, int lambda, const char* rep) {
  auto k = u.find_coset(lambda, u.model().normalize(u.model().parse(rep)));
  REQUIRE(k.has_value());
  return u.coset_vertex_id(*k);
}

}  // namespace

TEST_CASE("ball enumeration fixtures") {
  auto z = make_free_model("t");
  Universe uz(*z, 3);
  CHECK(uz.ball_size() == 7);
  CHECK(uz.layer(0) == 0);
  CHECK(uz.element(0).empty());

  auto d = make_dinfty();
  Universe ud(*d, 2);
  CHECK(ud.ball_size() == 5);
  std::set<std::string> nfs;
  for (int i = 0; i < ud.ball_size(); ++i) nfs.insert(d->word_str(ud.element(i)));
  CHECK(nfs == std::set<std::string>{"e", "a", "b", "ab", "ba"});

  auto c3 = make_cyclic_model(3, 'g');
  Universe uc(*c3, 5);
  CHECK(uc.ball_size() == 3);

  // Layers count geodesic length even when normal forms are longer words.
  auto sc = make_small_cancellation_model(
      "ab", {parse_word("aa", "ab"), parse_word("bb", "ab")});
  Universe us(*sc, 4);
  CHECK(us.ball_size() == 9);
  for (int i = 0; i < us.ball_size(); ++i)
    CHECK(us.layer(i) == static_cast<int>(us.element(i).size()));
}

TEST_CASE("ball cap raises resource error") {
  auto f2 = make_free_model("xy");
  CHECK_THROWS_AS(Universe(*f2, 8, 100), resource_error);
}

TEST_CASE("step table is symmetric under generator inversion") {
  auto m = make_z2z3();
  Universe u(*m, 4);
  for (int v = 0; v < u.ball_size(); ++v)
    for (int sym = 0; sym < 2 * m->alphabet_size(); ++sym) {
      int t = u.step(v, sym);
      if (t < 0) continue;
      Gen back = inverse(sym_gen(sym));
      CHECK(u.step(t, sym_id(back)) == v);
      CHECK(u.layer(t) <= u.layer(v) + 1);
    }
}

TEST_CASE("coset discovery") {
  auto d = make_dinfty();
  Universe u(*d, 2);
  // <a>, b<a>, ab<a> wait-no: ball {e,a,b,ab,ba}; lambda 0 cosets:
  // {e,a}, {b,ba}, {ab, aba} -> reps e, b, ab; lambda 1: e, a, ba.
  CHECK(u.coset_count() == 6);
  for (int k = 0; k < u.coset_count(); ++k) {
    CHECK(!u.coset_ball_members(k).empty());
    CHECK(u.coset_members_known(k));
    CHECK(u.coset_all_members(k).size() == 2);
    // The canonical rep is constant across members.
    for (int vid : u.coset_ball_members(k))
      CHECK(d->coset_rep(u.coset(k).lambda, u.element(vid)) == u.coset(k).rep);
  }
  CHECK(u.find_coset(0, d->parse("e")).has_value());
  CHECK(u.find_coset(0, d->normalize(d->parse("b"))).has_value());
  CHECK(u.find_coset(1, d->normalize(d->parse("a"))).has_value());
  CHECK(!u.find_coset(0, d->normalize(d->parse("a"))).has_value());

  // No peripherals -> no cosets.
  auto f = make_free_model("xy");
  Universe uf(*f, 2);
  CHECK(uf.coset_count() == 0);

  // Finite group with P = G: a single coset.
  auto c6 = make_cyclic_model(6, 'a');
  c6->add_peripheral({PeripheralSpec::Kind::generated, -1, {0}});
  Universe uc(*c6, 3);
  CHECK(uc.coset_count() == 1);
  CHECK(uc.coset_ball_members(0).size() == 6);
}

TEST_CASE("element pair distances certify via the ball") {
  auto z = make_free_model("t");
  Universe u(*z, 3);
  Word a = z->parse("ttt"), b = z->parse("TT");
  // d(t^3, t^-2) = 5 > 3: unresolved.
  DistanceResult d = u.element_distance(a, b);
  CHECK(!d.exact);
  CHECK(d.value == 4);  // reported as radius + 1
  d = u.element_distance(a, z->parse("t"));
  CHECK(d.exact);
  CHECK(d.value == 2);
}

TEST_CASE("s_distance fixtures on the infinite dihedral universe") {
  auto d = make_dinfty();
  Universe u(*d, 4);
  int A = coset_vtx(u, 0, "e");    // <a> = {e, a}
  int B = coset_vtx(u, 1, "e");    // <b> = {e, b}
  int bA = coset_vtx(u, 0, "b");   // b<a> = {b, ba}
  int e = vtx_of(u, "e");

  CHECK(u.s_distance(A, B).value == 0);
  CHECK(u.s_distance(A, B).exact);
  CHECK(u.s_distance(A, bA).value == 1);
  CHECK(u.s_distance(A, bA).exact);
  CHECK(u.s_distance(e, A).value == 0);
  CHECK(u.s_distance(e, bA).value == 1);
  CHECK(u.s_distance(vtx_of(u, "ab"), bA).value == 3);

  // Symmetry across all pairs.
  for (int x = 0; x < u.vertex_count(); ++x)
    for (int y = 0; y < u.vertex_count(); ++y) {
      DistanceResult xy = u.s_distance(x, y), yx = u.s_distance(y, x);
      CHECK(xy.value == yx.value);
      CHECK(xy.exact == yx.exact);
    }
}

TEST_CASE("triangle inequality through V holds on certified values") {
  auto m = make_z2z3();
  Universe u(*m, 5);
  for (int a = 0; a < u.vertex_count(); ++a)
    for (int b = 0; b < u.vertex_count(); ++b) {
      DistanceResult ab = u.s_distance(a, b);
      if (!ab.exact) continue;
      for (int v = 0; v < u.ball_size(); ++v) {
        DistanceResult av = u.s_distance(a, v), vb = u.s_distance(v, b);
        if (av.exact && vb.exact) CHECK(ab.value <= av.value + vb.value);
      }
    }
}

TEST_CASE("certified distances are stable under ball growth") {
  auto d = make_dinfty();
  Universe small(*d, 4), big(*d, 7);
  for (int x = 0; x < small.vertex_count(); ++x)
    for (int y = x; y < small.vertex_count(); ++y) {
      DistanceResult ds = small.s_distance(x, y);
      if (!ds.exact) continue;
      // Locate the same vertices in the bigger universe.
      auto locate = [&](int v) {
        if (small.is_element_vertex(v))
          return *big.find_element(small.element(v));
        const CosetVertex& c = small.coset(small.coset_index(v));
        return big.coset_vertex_id(*big.find_coset(c.lambda, c.rep));
      };
      DistanceResult db = big.s_distance(locate(x), locate(y));
      CHECK(db.exact);
      CHECK(db.value == ds.value);
    }
}

TEST_CASE("coned-off graph fixtures") {
  auto d = make_dinfty();
  Universe u(*d, 2);
  Graph g = coned_off_graph(u);
  int A = coset_vtx(u, 0, "e");
  CHECK(g.degree(A) == 2);
  CHECK(g.has_edge(A, vtx_of(u, "e")));
  CHECK(g.has_edge(A, vtx_of(u, "a")));
  // W vertex degree equals its ball membership count.
  for (int k = 0; k < u.coset_count(); ++k)
    CHECK(g.degree(u.coset_vertex_id(k)) ==
          static_cast<int>(u.coset_ball_members(k).size()));

  auto f = make_free_model("xy");
  Universe uf(*f, 2);
  Graph gf = coned_off_graph(uf);
  CHECK(gf.size() == uf.ball_size());
  CHECK(gf.edge_count() == uf.ball_size() - 1);  // the tree ball of F_2
}

TEST_CASE("edge orbit census") {
  auto f2 = make_free_model("xy");
  Universe u(*f2, 2);
  SDistCache cache(u);

  RipsGraph g1 = rips_graph(u, 1, cache);
  EdgeOrbitCensus c1 = count_edge_orbits(u, g1.graph);
  CHECK(c1.class_count() == 2);
  CHECK(c1.canonical);

  RipsGraph g2 = rips_graph(u, 2, cache);
  EdgeOrbitCensus c2 = count_edge_orbits(u, g2.graph);
  CHECK(c2.class_count() == 8);

  // Finite group, n at least the diameter: one class per inverse pair.
  auto c6 = make_cyclic_model(6, 'a');
  Universe uc(*c6, 3);
  SDistCache cc(uc);
  RipsGraph gc = rips_graph(uc, 3, cc);
  EdgeOrbitCensus cen = count_edge_orbits(uc, gc.graph);
  CHECK(cen.class_count() == 3);  // {a,a^-1}, {a^2,a^-2}, {a^3}
}

TEST_CASE("census is invariant under left translation") {
  auto d = make_dinfty();
  Universe big(*d, 6), small(*d, 3);
  SDistCache cache(small);
  RipsGraph rg = rips_graph(small, 2, cache);
  EdgeOrbitCensus base = count_edge_orbits(small, rg.graph);

  // Rebuild the small graph shifted by a: vertices a*g for g in the small
  // ball all lie inside the big ball; edges correspond one-to-one.
  Word a = d->parse("a");
  std::vector<int> image(small.vertex_count());
  for (int v = 0; v < small.ball_size(); ++v)
    image[v] = *big.find_element(mul(*d, a, small.element(v)));
  for (int k = 0; k < small.coset_count(); ++k) {
    const CosetVertex& c = small.coset(k);
    Word rep = d->coset_rep(c.lambda, mul(*d, a, c.rep));
    image[small.coset_vertex_id(k)] =
        big.coset_vertex_id(*big.find_coset(c.lambda, rep));
  }
  Graph shifted(big.vertex_count());
  for (auto [x, y] : rg.graph.edges()) shifted.add_edge(image[x], image[y]);
  EdgeOrbitCensus moved = count_edge_orbits(big, shifted);
  CHECK(moved.classes == base.classes);
}
