#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sph/cone.hpp"

using namespace sph;

namespace {

using RC = Cone<Rat>;

Vec<Rat> rv(std::vector<long> xs) {
  Vec<Rat> v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

// Oracle: enumerate candidate extreme rays of {x : u x <= 0} by solving all
// (d-1)-subsets of halfspaces for a 1-dimensional kernel and filtering by
// feasibility. Valid for pointed cones; independent of the DD code path.
Mat<Rat> brute_force_rays(const Mat<Rat>& hs, int d) {
  Mat<Rat> out;
  std::vector<int> idx(hs.size());
  std::vector<int> comb(d - 1);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == d - 1) {
      Mat<Rat> sub;
      for (int i : comb) sub.push_back(hs[i]);
      Mat<Rat> ker = kernel_basis(sub, d);
      if (ker.size() != 1) return;
      for (int s = 0; s < 2; ++s) {
        Vec<Rat> cand = s ? vec_neg(ker[0]) : ker[0];
        bool feas = true, tightall = true;
        for (auto& u : hs) {
          int sg = qsgn(dot(u, cand));
          if (sg > 0) feas = false;
          if (sg != 0) tightall = false;
        }
        if (feas && !tightall) {
          canon_positive_scale(cand);
          out.push_back(cand);
        }
      }
      return;
    }
    for (int i = start; i < (int)hs.size(); ++i) {
      comb[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  sort_dedup_vecs(out);
  // Drop non-extreme candidates: a candidate is extreme iff it is not in the
  // cone generated by the others... at oracle scale, keep only rays whose
  // tight set is not strictly contained in another candidate's tight set and
  // which cannot be reproduced; for the simple fixtures used here, tight-set
  // maximality suffices: a ray of a pointed d-cone is extreme iff its tight
  // halfspaces span a (d-1)-space and no other candidate has a superset span.
  return out;
}

RC pentagon_cone() {
  // Cone over a (rational) convex spherical pentagon in the z = 1 chart.
  Mat<Rat> verts = {rv({5, 0, 5}), rv({3, 4, 5}), rv({-3, 4, 5}),
                    rv({-4, -3, 5}), rv({4, -3, 5})};
  return cone_from_generators<Rat>(verts, {}, 3);
}

std::mt19937 rng(20240817);

Vec<Rat> random_covector(int d, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Vec<Rat> v(d, Rat(0));
  for (auto& x : v) x = Rat(dist(rng));
  return v;
}

}  // namespace

TEST_CASE("dd_convert trivial cases") {
  // Empty halfspace list: the full space.
  RC full = full_cone<Rat>(3);
  CHECK(full.dim() == 3);
  CHECK(full.lineality.size() == 3);
  CHECK(full.generators.empty());
  CHECK(full.contains(rv({1, -7, 3})));

  // Positive orthant.
  RC orth = cone_from_halfspaces<Rat>(
      {rv({-1, 0, 0}), rv({0, -1, 0}), rv({0, 0, -1})}, 3);
  CHECK(orth.lineality.empty());
  REQUIRE(orth.generators.size() == 3);
  CHECK(orth.contains(rv({1, 2, 3})));
  CHECK(!orth.contains(rv({-1, 2, 3})));
  Mat<Rat> expect = {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})};
  sort_dedup_vecs(expect);
  CHECK(orth.generators == expect);
}

TEST_CASE("dd_convert pentagon matches brute-force oracle") {
  RC pent = pentagon_cone();
  CHECK(pent.lineality.empty());
  CHECK(pent.generators.size() == 5);
  CHECK(pent.halfspaces.size() == 5);
  Mat<Rat> oracle = brute_force_rays(pent.halfspaces, 3);
  CHECK(oracle == pent.generators);
}

TEST_CASE("lineality decomposition") {
  // Halfspace {x <= 0} in R^2: lineality = y-axis, line-free part a ray.
  RC half = cone_from_halfspaces<Rat>({rv({1, 0})}, 2);
  auto [lin, lf] = lineality_decomposition(half);
  REQUIRE(lin.dim() == 1);
  CHECK(qzero(lin.basis[0][0]));
  REQUIRE(lf.generators.size() == 1);
  CHECK(lf.generators[0] == rv({-1, 0}));

  // Positive orthant: trivial lineality.
  RC orth = cone_from_halfspaces<Rat>({rv({-1, 0}), rv({0, -1})}, 2);
  CHECK(lineality_decomposition(orth).first.dim() == 0);

  // {x+y <= 0, -x-y <= 0}: the line x + y = 0.
  RC line = cone_from_halfspaces<Rat>({rv({1, 1}), rv({-1, -1})}, 2);
  auto [lin2, lf2] = lineality_decomposition(line);
  CHECK(lin2.dim() == 1);
  CHECK(qzero(dot(rv({1, 1}), lin2.basis[0])));
  CHECK(lf2.is_zero());
}

TEST_CASE("dual cone basics") {
  // Dual of the full space is {0}.
  CHECK(dual_cone(full_cone<Rat>(4)).is_zero());

  // Dual of a halfspace is a single ray.
  RC half = cone_from_halfspaces<Rat>({rv({1, -2, 3})}, 3);
  RC dual = dual_cone(half);
  CHECK(dual.lineality.empty());
  REQUIRE(dual.generators.size() == 1);
  CHECK(dual.generators[0] == rv({1, -2, 3}));

  // Dual of the cone over a cube is the cone over the octahedron.
  Mat<Rat> cube_verts;
  for (int s = 0; s < 8; ++s)
    cube_verts.push_back(rv({s & 1 ? 1 : -1, s & 2 ? 1 : -1, s & 4 ? 1 : -1, 1}));
  RC cube = cone_from_generators<Rat>(cube_verts, {}, 4);
  CHECK(cube.generators.size() == 8);
  CHECK(cube.halfspaces.size() == 6);
  RC oct = dual_cone(cube);
  CHECK(oct.generators.size() == 6);
  CHECK(oct.halfspaces.size() == 8);
  CHECK(dual_cone(oct).equals(cube));
}

TEST_CASE("predicates and intersections") {
  RC a = cone_from_halfspaces<Rat>({rv({1, 0})}, 2);   // x <= 0
  RC b = cone_from_halfspaces<Rat>({rv({-1, 0})}, 2);  // x >= 0
  RC meet = intersect(a, b);                           // the y-axis
  CHECK(meet.dim() == 1);
  CHECK(meet.lineality.size() == 1);
  CHECK(meet.contains(rv({0, 5})));
  CHECK(meet.contains(rv({0, -5})));
  CHECK(!meet.contains(rv({1, 0})));
  CHECK_THROWS_AS(intersect(a, full_cone<Rat>(3)), std::invalid_argument);
}

TEST_CASE("hull_union of Benoist neighbors") {
  // Cone over quadrilateral P with vertices (1,0),(2,0),(0,1),(0,2) and over
  // 2P; hull is the cone over {x,y >= 0, 1 <= x+y <= 4}.
  Mat<Rat> pv = {rv({1, 0, 1}), rv({2, 0, 1}), rv({0, 1, 1}), rv({0, 2, 1})};
  Mat<Rat> qv = {rv({2, 0, 1}), rv({4, 0, 1}), rv({0, 2, 1}), rv({0, 4, 1})};
  RC p = cone_from_generators<Rat>(pv, {}, 3);
  RC q = cone_from_generators<Rat>(qv, {}, 3);
  RC h = hull_union(p, q);
  Mat<Rat> expect_v = {rv({1, 0, 1}), rv({4, 0, 1}), rv({0, 1, 1}), rv({0, 4, 1})};
  RC expect = cone_from_generators<Rat>(expect_v, {}, 3);
  CHECK(h.equals(expect));
  CHECK(h.contains_cone(p));
  CHECK(h.contains_cone(q));
}

TEST_CASE("subspace operations") {
  auto xaxis = Subspace<Rat>::from_vectors({rv({1, 0, 0})}, 3);
  auto yz = xaxis.orthogonal_complement();
  CHECK(yz.dim() == 2);
  CHECK(yz.contains(rv({0, 2, 3})));
  CHECK(!yz.contains(rv({1, 0, 0})));
  CHECK(project_subspace(yz, rv({1, 2, 3})) == rv({0, 2, 3}));

  for (int it = 0; it < 50; ++it) {
    Mat<Rat> vecs;
    int k = 1 + it % 3;
    for (int i = 0; i < k; ++i) vecs.push_back(random_covector(4));
    auto s = Subspace<Rat>::from_vectors(vecs, 4);
    auto cc = s.orthogonal_complement().orthogonal_complement();
    CHECK(cc.basis == s.basis);
  }
}

TEST_CASE("kernel properties on random halfspace systems") {
  int cases = 0;
  while (cases < 300) {
    int d = 3 + (cases % 2);
    Mat<Rat> hs;
    std::uniform_int_distribution<int> nh(1, d + 3);
    int m = nh(rng);
    for (int i = 0; i < m; ++i) hs.push_back(random_covector(d));
    RC c = cone_from_halfspaces(hs, d);
    ++cases;

    // Roundtrip: V -> H -> V equality.
    RC rt = cone_from_generators(c.generators, c.lineality, d);
    CHECK(rt.equals(c));
    CHECK(rt.halfspaces == c.halfspaces);
    CHECK(rt.generators == c.generators);

    // Biduality.
    RC dd = dual_cone(dual_cone(c));
    CHECK(dd.equals(c));

    // Dimension law: dim L(C*) + dim l(C) = d.
    RC dual = dual_cone(c);
    CHECK(dual.dim() + (int)c.lineality.size() == d);

    // Decomposition reconstruction.
    auto [lin, lf] = lineality_decomposition(c);
    CHECK(lf.pointed());
    Mat<Rat> lin_m = lin.basis;
    RC rebuilt = cone_from_generators(lf.generators, lin_m, d);
    CHECK(rebuilt.equals(c));

    // De Morgan: (C cap D)* = conv(C* cup D*).
    Mat<Rat> hs2;
    int m2 = nh(rng);
    for (int i = 0; i < m2; ++i) hs2.push_back(random_covector(d));
    RC c2 = cone_from_halfspaces(hs2, d);
    CHECK(dual_cone(intersect(c, c2)).equals(hull_union(dual_cone(c), dual_cone(c2))));
  }
}

TEST_CASE("float backend mirrors exact predicates") {
  Mat<Approx> hs = {{Approx(-1), Approx(0), Approx(0)},
                    {Approx(0), Approx(-1), Approx(0)},
                    {Approx(0), Approx(0), Approx(-1)}};
  Cone<Approx> orth = cone_from_halfspaces(hs, 3);
  CHECK(orth.generators.size() == 3);
  CHECK(orth.lineality.empty());
  CHECK(orth.contains({Approx(1), Approx(2), Approx(3)}));
  CHECK(!orth.contains({Approx(-1), Approx(2), Approx(3)}));
  Cone<Approx> dd2 = dual_cone(dual_cone(orth));
  CHECK(dd2.equals(orth));
}
