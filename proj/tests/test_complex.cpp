#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "sph/fixtures.hpp"

using namespace sph;

namespace {

Vec<Rat> rv(std::vector<long> xs) { return fixtures::ray(std::move(xs)); }

// Conjugate a spec by a global transform: map every polytope, remap facet
// indices, conjugate every pairing matrix.
FacetRef remap_facet(const GluingSpec& old_s, const GluingSpec& new_s,
                     FacetRef f, const Transform& g) {
  Mat<Rat> rays;
  for (auto& r : face_rays(old_s.poly(f.pid), old_s.facet_face(f)))
    rays.push_back(g.apply_ray(r));
  return {f.pid, fixtures::find_facet(new_s.poly(f.pid), std::move(rays))};
}

GluingSpec conjugate_spec(const GluingSpec& s, Mat<Rat> gmat) {
  Transform g = Transform::from_matrix(std::move(gmat));
  GluingSpec out;
  out.d = s.d;
  out.names = s.names;
  for (auto& p : s.polytopes) out.polytopes.push_back(transform_polytope(p, g.m));
  for (auto& pr : s.pairings)
    out.pairings.push_back({remap_facet(s, out, pr.from, g),
                            remap_facet(s, out, pr.to, g),
                            compose(compose(g, pr.phi), g.inverse())});
  return out;
}

int count_convex(const std::vector<FacetConvexityReport>& reps) {
  int n = 0;
  for (auto& r : reps)
    if (r.convex_ridge_link) ++n;
  return n;
}

GluingSpec sheared_square_torus() {
  // Like the square torus but the vertical gluing also shears by one unit;
  // still a genuine affine torus (the two gluings commute).
  GluingSpec s = fixtures::square_torus();
  s.pairings.clear();
  fixtures::glue(s, 0, {rv({0, 0, 1}), rv({0, 1, 1})}, 0,
                 {rv({1, 0, 1}), rv({1, 1, 1})}, fixtures::translation2(1, 0));
  fixtures::glue(s, 0, {rv({0, 0, 1}), rv({1, 0, 1})}, 0,
                 {rv({0, 1, 1}), rv({1, 1, 1})},
                 {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)},
                  {Rat(0), Rat(0), Rat(1)}});
  return s;
}

GluingSpec rotation_square() {
  // Unit square with bottom -> left by the rotation about the origin and
  // top -> right by the rotation about (1,1). Every pairing is valid, but
  // corner cycles have period 1 or 2 with nontrivial holonomy.
  GluingSpec s = fixtures::square_torus();
  s.pairings.clear();
  fixtures::glue(s, 0, {rv({0, 0, 1}), rv({1, 0, 1})}, 0,
                 {rv({0, 0, 1}), rv({0, 1, 1})},
                 {{Rat(0), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
                  {Rat(0), Rat(0), Rat(1)}});
  fixtures::glue(s, 0, {rv({0, 1, 1}), rv({1, 1, 1})}, 0,
                 {rv({1, 0, 1}), rv({1, 1, 1})},
                 {{Rat(0), Rat(-1), Rat(2)}, {Rat(1), Rat(0), Rat(0)},
                  {Rat(0), Rat(0), Rat(1)}});
  return s;
}

}  // namespace

TEST_CASE("validate: all fixtures are valid gluing specs") {
  for (auto& name : fixtures::names()) {
    CAPTURE(name);
    auto rep = validate(fixtures::get(name));
    for (auto& v : rep.violations) CAPTURE(v.message);
    CHECK(rep.valid());
  }
}

TEST_CASE("validate: violations are reported") {
  // Tampered reverse pairing.
  GluingSpec s = fixtures::square_torus();
  s.pairings[1].phi = Transform::from_matrix(fixtures::translation2(2, 0));
  auto rep = validate(s);
  CHECK(!rep.valid());
  bool found = false;
  for (auto& v : rep.violations)
    if (v.message.find("inverse") != std::string::npos) found = true;
  CHECK(found);

  // Orbifold pairing: facet glued to itself by a reflection.
  GluingSpec orb;
  orb.d = 3;
  orb.names = {"square"};
  orb.polytopes.push_back(polytope_from_vertices<Rat>(
      {rv({-1, 0, 1}), rv({1, 0, 1}), rv({1, 1, 1}), rv({-1, 1, 1})}, 3));
  int left = fixtures::find_facet(orb.poly(0), {rv({-1, 0, 1}), rv({-1, 1, 1})});
  Mat<Rat> refl = {{Rat(-1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
                   {Rat(0), Rat(0), Rat(1)}};
  // A self-gluing of the bottom facet would need phi(sigma) = sigma.
  int bottom = fixtures::find_facet(orb.poly(0), {rv({-1, 0, 1}), rv({1, 0, 1})});
  orb.pairings.push_back({{0, bottom}, {0, bottom}, Transform::from_matrix(refl)});
  (void)left;
  auto orep = validate(orb);
  CHECK(!orep.valid());
  bool orbifold = false;
  for (auto& v : orep.violations)
    if (v.message.find("orbifold") != std::string::npos) orbifold = true;
  CHECK(orbifold);
}

TEST_CASE("ridge cycles partition the ridges with the expected periods") {
  struct Expect {
    const char* name;
    int total_ridges;
    std::multiset<int> periods;
  };
  const Expect table[] = {
      {"square-torus", 4, {4}},
      {"cube-3-torus", 12, {4, 4, 4}},
      {"benoist-triangles", 12, {6, 6}},
      {"hexagon-torus", 6, {3, 3}},
      {"right-isosceles-wallpaper", 12, {4, 8}},
  };
  for (auto& ex : table) {
    CAPTURE(ex.name);
    GluingSpec s = fixtures::get(ex.name);
    auto cycles = ridge_cycles(s);
    std::multiset<int> periods;
    std::set<RidgeRef> covered;
    int listed = 0;
    for (auto& c : cycles) {
      periods.insert(c.period);
      CHECK((int)c.ridges.size() == c.period);
      std::set<RidgeRef> mine(c.ridges.begin(), c.ridges.end());
      for (auto& r : mine) CHECK(!covered.count(r));
      covered.insert(mine.begin(), mine.end());
      listed += (int)mine.size();
    }
    CHECK(periods == ex.periods);
    CHECK(listed == ex.total_ridges);
    CHECK((int)covered.size() == ex.total_ridges);
  }
}

TEST_CASE("poincare conditions hold on every fixture") {
  for (auto& name : fixtures::names()) {
    CAPTURE(name);
    GluingSpec s = fixtures::get(name);
    for (auto& rep : poincare_check(s)) {
      CHECK(rep.holonomy_identity);
      CHECK(rep.link_is_circle);
    }
  }
}

TEST_CASE("poincare condition (2) is independent of the seed choice") {
  for (auto name : {"square-torus", "benoist-triangles", "hexagon-torus"}) {
    GluingSpec s = fixtures::get(name);
    for (auto& cyc : ridge_cycles(s)) {
      bool verdict = poincare_check_cycle(s, cyc).link_is_circle;
      for (int i = 0; i < cyc.period; ++i) {
        // Same direction, rotated seed.
        RidgeCycle alt = trace_ridge_cycle(s, cyc.ridges[i], cyc.facets[i].facet);
        CHECK(poincare_check_cycle(s, alt).link_is_circle == verdict);
        // Opposite direction through the other facet of the ridge.
        const auto& fs = s.poly(cyc.ridges[i].pid).faces[cyc.ridges[i].face].facet_set;
        int other = fs[0] == cyc.facets[i].facet ? fs[1] : fs[0];
        RidgeCycle rev = trace_ridge_cycle(s, cyc.ridges[i], other);
        CHECK(poincare_check_cycle(s, rev).link_is_circle == verdict);
      }
    }
  }
}

TEST_CASE("sheared torus still passes the poincare check") {
  GluingSpec s = sheared_square_torus();
  CHECK(validate(s).valid());
  for (auto& rep : poincare_check(s)) CHECK(rep.pass());
}

TEST_CASE("rotation gluing fails the poincare check") {
  GluingSpec s = rotation_square();
  CHECK(validate(s).valid());
  auto reps = poincare_check(s);
  CHECK(!reps.empty());
  for (auto& rep : reps) {
    CHECK(!rep.holonomy_identity);
    CHECK(!rep.link_is_circle);
  }
}

TEST_CASE("residual convexity: verdicts and method agreement") {
  for (auto& name : fixtures::names()) {
    CAPTURE(name);
    GluingSpec s = fixtures::get(name);
    auto reps = residual_convexity_check(s);
    CHECK(reps.size() == s.pairings.size());
    for (auto& r : reps) CHECK(r.agree());
    if (std::string(name) == "hexagon-torus") {
      CHECK(count_convex(reps) == 0);  // reflex angle 4pi/3 at every gluing
    } else {
      CHECK(count_convex(reps) == (int)reps.size());
    }
  }
}

TEST_CASE("residual convexity: benoist quadrilateral with rotation is not convex") {
  GluingSpec s;
  s.d = 3;
  s.names = {"quad"};
  s.polytopes.push_back(polytope_from_vertices<Rat>(
      {rv({1, 0, 1}), rv({2, 0, 1}), rv({0, 1, 1}), rv({0, 2, 1})}, 3));
  Mat<Rat> rot = {{Rat(0), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
                  {Rat(0), Rat(0), Rat(1)}};
  int xedge = fixtures::find_facet(s.poly(0), {rv({1, 0, 1}), rv({2, 0, 1})});
  int yedge = fixtures::find_facet(s.poly(0), {rv({0, 1, 1}), rv({0, 2, 1})});
  Pairing pr{{0, xedge}, {0, yedge}, Transform::from_matrix(rot)};
  auto rep = facet_union_convexity(s, pr);
  CHECK(rep.agree());
  CHECK(!rep.convex_ridge_link);
}

TEST_CASE("hypothesis scans") {
  GluingSpec sq = fixtures::square_torus();
  CHECK(triangular_scan(sq).empty());
  auto th = thickness_scan(sq);
  REQUIRE(th.size() == 1);
  CHECK(!th[0].second);  // dual of the square is a square: thin

  GluingSpec ben = fixtures::benoist_triangles();
  CHECK(triangular_scan(ben).size() == 4);  // every triangle is triangular

  GluingSpec cube = fixtures::cube_3_torus();
  CHECK(triangular_scan(cube).empty());
  auto cth = thickness_scan(cube);
  REQUIRE(cth.size() == 1);
  CHECK(!cth[0].second);  // dual of the cube is the octahedron: thin
}

TEST_CASE("global conjugation leaves every verdict unchanged") {
  Mat<Rat> g3 = {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
                 {Rat(0), Rat(0), Rat(2)}};
  Mat<Rat> g4 = {{Rat(1), Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(0), Rat(0)},
                 {Rat(0), Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(0), Rat(3)}};
  for (auto& name : fixtures::names()) {
    CAPTURE(name);
    GluingSpec s = fixtures::get(name);
    GluingSpec t = conjugate_spec(s, s.d == 3 ? g3 : g4);
    CHECK(validate(t).valid());
    auto p1 = poincare_check(s);
    auto p2 = poincare_check(t);
    int pass1 = 0, pass2 = 0;
    for (auto& r : p1) pass1 += r.pass();
    for (auto& r : p2) pass2 += r.pass();
    CHECK(p1.size() == p2.size());
    CHECK(pass1 == pass2);
    CHECK(count_convex(residual_convexity_check(s)) ==
          count_convex(residual_convexity_check(t)));
    CHECK(triangular_scan(s).size() == triangular_scan(t).size());
    CHECK(thickness_scan(s) == thickness_scan(t));
  }
}
