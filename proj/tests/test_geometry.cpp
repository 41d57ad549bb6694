#include "grips/geometry.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "grips/errors.hpp"
#include "grips/universe.hpp"

using namespace grips;

namespace {

// D_infinity as the free product Z/2 * Z/2 with both factors peripheral.
std::unique_ptr<GroupModel> dinf() {
  std::vector<std::unique_ptr<GroupModel>> factors;
  factors.push_back(make_cyclic_model(2, 'a'));
  factors.push_back(make_cyclic_model(2, 'b'));
  auto m = make_free_product(std::move(factors));
  m->add_peripheral({PeripheralSpec::Kind::factor, 0, {}});
  m->add_peripheral({PeripheralSpec::Kind::factor, 1, {}});
  return m;
}

std::unique_ptr<GroupModel> z2z3() {
  std::vector<std::unique_ptr<GroupModel>> factors;
  factors.push_back(make_cyclic_model(2, 'a'));
  factors.push_back(make_cyclic_model(3, 'b'));
  auto m = make_free_product(std::move(factors));
  m->add_peripheral({PeripheralSpec::Kind::factor, 0, {}});
  m->add_peripheral({PeripheralSpec::Kind::factor, 1, {}});
  return m;
}

std::unique_ptr<GroupModel> zsq() {
  std::vector<std::unique_ptr<GroupModel>> factors;
  factors.push_back(make_free_model("x"));
  factors.push_back(make_free_model("y"));
  return make_direct_product(std::move(factors));
}

int vid(const Universe& u, const std::string& s) {
  auto v = u.find_element(u.model().parse(s));
  REQUIRE(v.has_value());
  return *v;
}

int wid(const Universe& u, int lambda, const std::string& rep) {
  auto k = u.find_coset(lambda, u.model().parse(rep));
  REQUIRE(k.has_value());
  return u.coset_vertex_id(*k);
}

std::vector<int> vids(const Universe& u, const std::vector<std::string>& ss) {
  std::vector<int> out;
  for (const auto& s : ss) out.push_back(vid(u, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("geometry parameter validation") {
  CHECK_NOTHROW(validate(GeometryParams{1, 1, 1, 1}));
  CHECK_NOTHROW(validate(GeometryParams{2, 3, 2, 1}));
  CHECK_THROWS_AS(validate(GeometryParams{2, 1, 1, 1}), input_error);
  CHECK_THROWS_AS(validate(GeometryParams{0, 1, 1, 1}), input_error);
  CHECK_THROWS_AS(validate(GeometryParams{1, 1, 1, 0}), input_error);
}

TEST_CASE("geodesics on a line") {
  auto z = make_free_model("t");
  Universe u(*z, 6);
  SDistCache dist(u);

  GeodesicPath p = geodesic(u, dist, vid(u, "e"), vid(u, "ttt"));
  CHECK(p.vertices == std::vector<int>{vid(u, "e"), vid(u, "t"), vid(u, "tt"),
                                       vid(u, "ttt")});
  CHECK(p.length() == 3);

  GeodesicPath loop = geodesic(u, dist, vid(u, "tt"), vid(u, "tt"));
  CHECK(loop.length() == 0);
  CHECK(loop.vertices == std::vector<int>{vid(u, "tt")});

  // opposite boundary points: distance not certified at this radius
  CHECK_THROWS_WITH_AS(
      geodesic(u, dist, vid(u, "TTTTTT"), vid(u, "tttttt")),
      doctest::Contains("not certified"), truncation_error);
}

TEST_CASE("geodesic between cone vertices") {
  auto m = dinf();
  Universe u(*m, 4);
  SDistCache dist(u);

  // <a> to b<a>: realized by the shortlex-least member pair (e, b)
  GeodesicPath p = geodesic(u, dist, wid(u, 0, "e"), wid(u, 0, "b"));
  CHECK(p.vertices == std::vector<int>{vid(u, "e"), vid(u, "b")});
  CHECK(p.length() == 1);

  // cones sharing the member a sit at distance zero
  GeodesicPath q = geodesic(u, dist, wid(u, 0, "e"), wid(u, 1, "a"));
  CHECK(q.length() == 0);
  CHECK(q.vertices == std::vector<int>{vid(u, "a")});

  CHECK_THROWS_AS(geodesic(u, dist, wid(u, 0, "e"), wid(u, 0, "e")),
                  input_error);
}

TEST_CASE("shortlex tie-breaking between parallel geodesics") {
  auto m = zsq();
  Universe u(*m, 4);
  SDistCache dist(u);

  // e -> xy admits (e,x,xy) and (e,y,xy); shortlex picks x first
  GeodesicPath p = geodesic(u, dist, vid(u, "e"), vid(u, "xy"));
  CHECK(p.vertices ==
        std::vector<int>{vid(u, "e"), vid(u, "x"), vid(u, "xy")});
}

TEST_CASE("geodesic intervals by betweenness") {
  auto z = make_free_model("t");
  Universe uz(*z, 6);
  SDistCache dz(uz);
  CHECK(geodesic_interval(uz, dz, vid(uz, "e"), vid(uz, "ttt")) ==
        vids(uz, {"e", "t", "tt", "ttt"}));

  auto sq = zsq();
  Universe us(*sq, 4);
  SDistCache ds(us);
  CHECK(geodesic_interval(us, ds, vid(us, "e"), vid(us, "xy")) ==
        vids(us, {"e", "x", "y", "xy"}));

  auto f2 = make_free_model("xy");
  Universe uf(*f2, 4);
  SDistCache df(uf);
  CHECK(geodesic_interval(uf, df, vid(uf, "x"), vid(uf, "y")) ==
        vids(uf, {"x", "e", "y"}));
}

TEST_CASE("interval contains every geodesic vertex") {
  auto m = dinf();
  Universe u(*m, 5);
  SDistCache dist(u);
  int checked = 0;
  for (int a = 0; a < u.vertex_count(); ++a)
    for (int b = a + 1; b < u.vertex_count(); ++b) {
      std::vector<int> iv;
      GeodesicPath p;
      try {
        p = geodesic(u, dist, a, b);
        iv = geodesic_interval(u, dist, a, b);
      } catch (const truncation_error&) {
        continue;
      }
      ++checked;
      for (int v : p.vertices)
        CHECK(std::binary_search(iv.begin(), iv.end(), v));
    }
  CHECK(checked > 50);
}

TEST_CASE("deep and transition vertices") {
  auto f2 = make_free_model("xy");
  Universe uf(*f2, 4);
  SDistCache df(uf);
  GeodesicPath pf = geodesic(uf, df, vid(uf, "e"), vid(uf, "xxx"));
  DeepClassification cf = classify_vertices(uf, df, pf, GeometryParams{});
  for (const VertexTag& t : cf.tags) CHECK(!t.deep);
  CHECK(!cf.double_deep);

  auto m = dinf();
  Universe u(*m, 4);
  SDistCache dist(u);
  GeodesicPath p = geodesic(u, dist, vid(u, "e"), vid(u, "ab"));
  DeepClassification c = classify_vertices(u, dist, p, GeometryParams{});
  // window range excludes the path ends
  CHECK(!c.tags[0].deep);
  CHECK(!c.tags[2].deep);
  // the middle vertex a is 1-close to both <a> and a<b> over the whole path
  CHECK(c.tags[1].deep);
  CHECK(c.tags[1].coset == wid(u, 0, "e"));
  CHECK(c.double_deep);
  CHECK(c.double_deep_index == 1);
  CHECK(c.double_deep_cosets ==
        std::pair<int, int>{wid(u, 0, "e"), wid(u, 1, "a")});
}

TEST_CASE("R estimation") {
  auto f2 = make_free_model("xy");
  Universe uf(*f2, 3);
  SDistCache df(uf);
  REstimate rf = estimate_R(uf, df, 1, SampleSpec{true, 0}, 0);
  CHECK(rf.R == 1);  // no cosets, vacuous
  CHECK(rf.exhaustive);
  CHECK(rf.geodesics_scanned > 0);

  auto m = dinf();
  Universe u(*m, 6);
  SDistCache dist(u);
  REstimate r = estimate_R(u, dist, 1, SampleSpec{true, 0}, 0);
  CHECK(r.R == 2);

  // frozen fixture: exhaustive scan on Z/2 * Z/3 at radius 6
  auto zz = z2z3();
  Universe uz(*zz, 6);
  SDistCache dz(uz);
  REstimate rz = estimate_R(uz, dz, 1, SampleSpec{true, 0}, 0);
  CHECK(rz.R == 2);

  // sampled mode is deterministic in the seed
  REstimate s1 = estimate_R(u, dist, 1, SampleSpec{false, 150}, 7);
  REstimate s2 = estimate_R(u, dist, 1, SampleSpec{false, 150}, 7);
  CHECK(s1.R == s2.R);
  CHECK(s1.geodesics_scanned == s2.geodesics_scanned);
  CHECK(!s1.exhaustive);
}

TEST_CASE("no double-deep at the estimated R") {
  auto m = dinf();
  Universe u(*m, 6);
  SDistCache dist(u);
  GeometryParams params;
  params.R = estimate_R(u, dist, 1, SampleSpec{true, 0}, 0).R;
  for (int a = 0; a < u.vertex_count(); ++a)
    for (int b = 0; b < u.vertex_count(); ++b) {
      if (a == b) continue;
      try {
        GeodesicPath p = geodesic(u, dist, a, b);
        CHECK(!classify_vertices(u, dist, p, params).double_deep);
      } catch (const truncation_error&) {
      }
    }
}

TEST_CASE("thin triangle defects") {
  auto z = make_free_model("t");
  Universe uz(*z, 6);
  SDistCache dz(uz);
  GeometryParams params;

  TriangleDefect line = thin_triangle_check(uz, dz, vid(uz, "e"),
                                            vid(uz, "tttttt"), vid(uz, "ttt"),
                                            2, params);
  CHECK(line.defect == 0);
  CHECK(!line.z_deep);
  CHECK(line.z == vid(uz, "tt"));

  // degenerate side c == a keeps the defect finite
  TriangleDefect degen = thin_triangle_check(uz, dz, vid(uz, "e"),
                                             vid(uz, "tttt"), vid(uz, "e"), 2,
                                             params);
  CHECK(degen.defect == 0);

  CHECK_THROWS_AS(thin_triangle_check(uz, dz, vid(uz, "e"), vid(uz, "e"),
                                      vid(uz, "t"), 0, params),
                  input_error);
  CHECK_THROWS_AS(thin_triangle_check(uz, dz, vid(uz, "e"), vid(uz, "tt"),
                                      vid(uz, "t"), 3, params),
                  input_error);

  auto f2 = make_free_model("xy");
  Universe uf(*f2, 4);
  SDistCache df(uf);
  TriangleDefect tripod = thin_triangle_check(uf, df, vid(uf, "xx"),
                                              vid(uf, "yy"), vid(uf, "e"), 3,
                                              params);
  CHECK(tripod.defect == 0);
  CHECK(!tripod.z_deep);
  CHECK(tripod.z == vid(uf, "y"));

  // a deep vertex probes from its coset
  auto m = dinf();
  Universe u(*m, 6);
  SDistCache dist(u);
  TriangleDefect deep = thin_triangle_check(u, dist, vid(u, "e"),
                                            vid(u, "abab"), vid(u, "b"), 2,
                                            params);
  CHECK(deep.z_deep);
  CHECK(deep.z == wid(u, 0, "ab"));
  CHECK(deep.defect == 0);
}

TEST_CASE("worst-case defect maximizes over geodesic triples") {
  auto sq = zsq();
  Universe u(*sq, 4);
  SDistCache dist(u);
  GeometryParams params;
  int e = vid(u, "e"), corner = vid(u, "xy"), side = vid(u, "x");

  TriangleDefect def = thin_triangle_check(u, dist, e, corner, side, 1,
                                           params);
  CHECK(def.defect == 0);  // shortlex sides agree on the x branch

  WorstCaseDefect worst =
      thin_triangle_worst_case(u, dist, e, corner, side, 1, params, 10000);
  CHECK(worst.complete);
  CHECK(worst.windows_seen == 2);  // (e,x,xy) and (e,y,xy)
  CHECK(worst.defect == 2);        // the y branch misses the x-side vertices

  WorstCaseDefect starved =
      thin_triangle_worst_case(u, dist, e, corner, side, 1, params, 0);
  CHECK(!starved.complete);

  // unique geodesics: the worst case collapses to the plain measurement
  auto m = dinf();
  Universe ud(*m, 6);
  SDistCache dd(ud);
  TriangleDefect d1 = thin_triangle_check(ud, dd, vid(ud, "e"),
                                          vid(ud, "abab"), vid(ud, "b"), 2,
                                          params);
  WorstCaseDefect w1 = thin_triangle_worst_case(ud, dd, vid(ud, "e"),
                                                vid(ud, "abab"), vid(ud, "b"),
                                                2, params, 10000);
  CHECK(w1.complete);
  CHECK(w1.defect >= d1.defect);
}

TEST_CASE("D estimation") {
  // trees have unique geodesics: every defect vanishes
  auto f2 = make_free_model("xy");
  Universe uf(*f2, 3);
  SDistCache df(uf);
  DEstimate tree = estimate_D(uf, df, 1, 1, SampleSpec{true, 0}, 0);
  CHECK(tree.D == 0);
  CHECK(tree.measurements > 0);
  CHECK(tree.histogram.size() == 1);
  CHECK(tree.histogram.at(0) == tree.measurements);

  // frozen fixture: the line-like model measures flat at radius 6
  auto m = dinf();
  Universe u(*m, 6);
  SDistCache dist(u);
  DEstimate d6 = estimate_D(u, dist, 1, 2, SampleSpec{true, 0}, 0);
  CHECK(d6.D == 0);
  CHECK(d6.measurements > 10000);

  // empty sample
  DEstimate none = estimate_D(u, dist, 1, 2, SampleSpec{false, 0}, 9);
  CHECK(none.D == 0);
  CHECK(none.measurements == 0);
  CHECK(none.histogram.empty());

  // sampled mode is deterministic in the seed
  DEstimate s1 = estimate_D(u, dist, 1, 2, SampleSpec{false, 300}, 11);
  DEstimate s2 = estimate_D(u, dist, 1, 2, SampleSpec{false, 300}, 11);
  CHECK(s1.D == s2.D);
  CHECK(s1.measurements == s2.measurements);
  CHECK(s1.histogram == s2.histogram);
}

TEST_CASE("mu-convexity") {
  auto z = make_free_model("t");
  Universe uz(*z, 10);
  SDistCache dz(uz);

  std::vector<int> segment;
  for (int k = 0; k <= 10; ++k)
    segment.push_back(vid(uz, std::string(k, 't')));
  ConvexityResult seg = is_mu_convex(uz, dz, segment, vid(uz, "e"), 1, 1);
  CHECK(seg.convex);

  Universe uz6(*z, 6);
  SDistCache dz6(uz6);
  std::vector<int> gap{vid(uz6, "e"), vid(uz6, "tttt")};
  ConvexityResult bad = is_mu_convex(uz6, dz6, gap, vid(uz6, "e"), 1, 1);
  CHECK(!bad.convex);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->u_prime == vid(uz6, "tttt"));
  CHECK(bad.witness->x == vid(uz6, "t"));
  CHECK(bad.witness->missing == vid(uz6, "t"));

  // the whole universe is convex for any mu
  auto m = dinf();
  Universe u(*m, 4);
  SDistCache dist(u);
  std::vector<int> all;
  for (int v = 0; v < u.vertex_count(); ++v) all.push_back(v);
  CHECK(is_mu_convex(u, dist, all, 0, 1, 1).convex);
  CHECK(is_mu_convex(u, dist, all, 0, 3, 1).convex);

  // cone vertices near an interior element must belong to the set
  std::vector<int> with_cones{vid(u, "e"),    vid(u, "a"),
                              wid(u, 0, "e"), wid(u, 1, "e"),
                              wid(u, 1, "a"), wid(u, 0, "b")};
  CHECK(is_mu_convex(u, dist, with_cones, vid(u, "e"), 1, 1).convex);

  std::vector<int> missing_cone{vid(u, "e"), vid(u, "a"), wid(u, 0, "e"),
                                wid(u, 1, "e"), wid(u, 0, "b")};
  ConvexityResult mc =
      is_mu_convex(u, dist, missing_cone, vid(u, "e"), 1, 1);
  CHECK(!mc.convex);
  REQUIRE(mc.witness.has_value());
  CHECK(mc.witness->missing == wid(u, 1, "a"));

  CHECK_THROWS_AS(is_mu_convex(u, dist, {}, 0, 1, 1), input_error);
  CHECK_THROWS_AS(is_mu_convex(u, dist, {vid(u, "a")}, vid(u, "e"), 1, 1),
                  input_error);
}

TEST_CASE("r-hulls") {
  auto z = make_free_model("t");
  Universe u(*z, 6);
  SDistCache dist(u);
  std::vector<int> U{vid(u, "e"), vid(u, "tttt")};

  HullResult h4 = r_hull(u, dist, U, 4, 1);
  CHECK(h4.members == vids(u, {"e", "t", "tt", "ttt", "tttt"}));
  CHECK(h4.uncertain.empty());

  HullResult h5 = r_hull(u, dist, U, 5, 1);
  CHECK(h5.members ==
        vids(u, {"T", "e", "t", "tt", "ttt", "tttt", "ttttt"}));

  // hulls grow with the radius parameter
  for (int r = 0; r + 1 <= 5; ++r) {
    HullResult lo = r_hull(u, dist, U, r, 1);
    HullResult hi = r_hull(u, dist, U, r + 1, 1);
    CHECK(std::includes(hi.members.begin(), hi.members.end(),
                        lo.members.begin(), lo.members.end()));
  }

  CHECK_THROWS_AS(r_hull(u, dist, {}, 2, 1), input_error);

  // a single element plus the cone vertices epsilon-close to it
  auto m = dinf();
  Universe ud(*m, 4);
  SDistCache dd(ud);
  HullResult h0 = r_hull(ud, dd, {vid(ud, "e")}, 0, 1);
  std::vector<int> expect{vid(ud, "e"), wid(ud, 0, "e"), wid(ud, 0, "b"),
                          wid(ud, 1, "e"), wid(ud, 1, "a")};
  std::sort(expect.begin(), expect.end());
  CHECK(h0.members == expect);
}

TEST_CASE("hulls of short segments are convex at the measured slack") {
  auto m = dinf();
  Universe u(*m, 6);
  SDistCache dist(u);
  DEstimate de = estimate_D(u, dist, 1, 2, SampleSpec{true, 0}, 0);

  std::vector<int> U{vid(u, "e"), vid(u, "a")};  // pairwise distance 1
  HullResult hull = r_hull(u, dist, U, 1, 1);
  CHECK(hull.uncertain.empty());
  for (int base : U) {
    ConvexityResult c =
        is_mu_convex(u, dist, hull.members, base, 1 + 2 * de.D, 1);
    CHECK(c.convex);
  }
}
