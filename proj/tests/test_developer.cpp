#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sph/developer.hpp"
#include "sph/fixtures.hpp"

using namespace sph;

namespace {

// Cells of st^k as a sorted id list.
std::vector<int> stk(const DevelopedComplex& dc, int k) { return dc.st_cells(k); }

int find_cell(const DevelopedComplex& dc, const Transform& g, int pid = 0) {
  for (int c = 0; c < (int)dc.cells.size(); ++c)
    if (dc.cells[c].pid == pid && dc.cells[c].g == g) return c;
  return -1;
}

Transform shift2(long dx, long dy) {
  return Transform::from_matrix(fixtures::translation2(dx, dy));
}

}  // namespace

TEST_CASE("develop: square torus stars are (2k+1)^2 blocks") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 3);
  CHECK(dc.injective());
  for (int k = 0; k <= 3; ++k)
    CHECK((int)stk(dc, k).size() == (2 * k + 1) * (2 * k + 1));
  // Universal-cover cells are exactly the integer translates, each once.
  std::set<std::string> keys;
  for (auto& c : dc.cells) keys.insert(c.g.key());
  CHECK(keys.size() == dc.cells.size());
  for (int dx = -3; dx <= 3; ++dx)
    for (int dy = -3; dy <= 3; ++dy) {
      int c = find_cell(dc, shift2(dx, dy));
      REQUIRE(c >= 0);
      CHECK(dc.cells[c].depth == std::max(std::abs(dx), std::abs(dy)));
    }
  // Every cell of st^2 is complete (its whole link ring exists).
  for (int c : stk(dc, 2)) CHECK(dc.complete(c));
}

TEST_CASE("develop: cube 3-torus stars are (2k+1)^3 blocks") {
  GluingSpec s = fixtures::cube_3_torus();
  DevelopedComplex dc = develop(s, 0, 2);
  CHECK(dc.injective());
  for (int k = 0; k <= 2; ++k)
    CHECK((int)stk(dc, k).size() == (2 * k + 1) * (2 * k + 1) * (2 * k + 1));
}

TEST_CASE("develop: star recursion and vertex-star identities") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 3);
  // st(P_0) equals the union of the vertex stars, and P_0 their intersection.
  std::set<int> un;
  std::vector<int> inter;
  bool first = true;
  const auto& p = dc.base(0);
  for (auto& f : p.faces) {
    if (f.fdim != 0) continue;
    ResidueResult res = residue(dc, {0, f.id});
    CHECK(res.ok);
    CHECK(res.cells.size() == 4);
    std::vector<int> sorted = res.cells;
    std::sort(sorted.begin(), sorted.end());
    un.insert(sorted.begin(), sorted.end());
    if (first) {
      inter = sorted;
      first = false;
    } else {
      inter = detail::set_intersect(inter, sorted);
    }
  }
  CHECK(inter == std::vector<int>{0});
  std::vector<int> st1 = stk(dc, 1);
  CHECK(std::vector<int>(un.begin(), un.end()) == st1);
  // st^{k+1}(P_0) = union of st^k(P) over the cells P of st(P_0).
  std::set<int> rec;
  for (int c : st1) {
    CellSetResult sp = star(dc, {c}, 1);
    CHECK(sp.ok);
    rec.insert(sp.cells.begin(), sp.cells.end());
  }
  CHECK(std::vector<int>(rec.begin(), rec.end()) == stk(dc, 2));
}

TEST_CASE("residue: cyclic ridge order and the intersection identity") {
  GluingSpec cube = fixtures::cube_3_torus();
  DevelopedComplex dc = develop(cube, 0, 2);
  const auto& p = dc.base(0);
  // res(edge) = 4 cubes in cyclic order; consecutive ones share a facet.
  for (auto& e : p.faces) {
    if (e.fdim != 1) continue;
    ResidueResult res = residue(dc, {0, e.id});
    REQUIRE(res.ok);
    REQUIRE(res.cells.size() == 4);
    for (int i = 0; i < 4; ++i) {
      int a = res.cells[i], b = res.cells[(i + 1) % 4];
      bool linked = false;
      for (int n : dc.cells[a].nbr) linked = linked || n == b;
      CHECK(linked);
    }
    // res(e) equals the intersection of the residues of e's endpoints.
    std::vector<int> inter;
    bool first = true;
    for (int v : e.vertex_set) {
      auto vid = p.face_with_vertices({v});
      REQUIRE(vid);
      ResidueResult rv = residue(dc, {0, *vid});
      REQUIRE(rv.ok);
      std::vector<int> sorted = rv.cells;
      std::sort(sorted.begin(), sorted.end());
      if (first) {
        inter = sorted;
        first = false;
      } else {
        inter = detail::set_intersect(inter, sorted);
      }
    }
    std::vector<int> mine = res.cells;
    std::sort(mine.begin(), mine.end());
    CHECK(mine == inter);
  }
}

TEST_CASE("residue near the frontier reports needs-deeper instead of guessing") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 1);
  // A corner vertex of a rim cell of st^1 whose ring is not fully present.
  int rim = find_cell(dc, shift2(1, 1));
  REQUIRE(rim >= 0);
  bool some_incomplete = false;
  for (auto& f : dc.base(rim).faces) {
    if (f.fdim != 0) continue;
    if (!residue(dc, {rim, f.id}).ok) some_incomplete = true;
  }
  CHECK(some_incomplete);
}

TEST_CASE("polyball and union convexity verdicts") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 3);
  CHECK(polyball_check(dc, {0}).ok());
  for (int k = 1; k <= 2; ++k) {
    CHECK(polyball_check(dc, stk(dc, k)).ok());
    UnionConvexityReport uc = union_convexity(dc, stk(dc, k));
    CHECK(uc.agree());
    CHECK(uc.ok());
  }
  // Two adjacent squares: convex (the shared-endpoint links are halfplanes).
  int right = find_cell(dc, shift2(1, 0));
  REQUIRE(right >= 0);
  CHECK(polyball_check(dc, {0, right}).ok());
  CHECK(union_convexity(dc, {0, right}).ok());
  // L-shaped tromino: a polyball, but the reflex corner breaks convexity.
  int up = find_cell(dc, shift2(0, 1));
  REQUIRE(up >= 0);
  CHECK(polyball_check(dc, {0, right, up}).ok());
  UnionConvexityReport l = union_convexity(dc, {0, right, up});
  CHECK(l.agree());
  CHECK(!l.ok());
}

TEST_CASE("polyball fails on overlapping cells") {
  GluingSpec s = fixtures::benoist_triangles();
  DevelopedComplex dc = develop(s, 0, 6);
  REQUIRE(!dc.injective());
  auto& ev = dc.overlaps.front();
  CHECK(!polyball_check(dc, {ev.a, ev.b}).ok());
}

TEST_CASE("benoist development wraps: overlap at small finite depth") {
  GluingSpec s = fixtures::benoist_triangles();
  DevelopedComplex dc = develop(s, 0, 6);
  CHECK(!dc.injective());
  auto& ev = dc.overlaps.front();
  CHECK(ev.depth <= 40);
  // The overlapping cells really coincide as cones, and the wrap-around is a
  // short loop: the duplicate sits within 40 facet crossings of the base.
  CHECK(dc.contact_dim(ev.a, ev.b) == s.d);
  std::vector<int> dist(dc.cells.size(), -1);
  std::deque<int> q = {0};
  dist[0] = 0;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int n : dc.cells[c].nbr)
      if (n >= 0 && dist[n] < 0) {
        dist[n] = dist[c] + 1;
        q.push_back(n);
      }
  }
  CHECK(dist[ev.b] >= 1);
  CHECK(dist[ev.b] <= 40);
}

TEST_CASE("residual convexity audit: torus passes, hexagon fails") {
  {
    DevelopedComplex dc = develop(fixtures::square_torus(), 0, 2);
    AuditReport rep = residual_convexity_audit(dc);
    CHECK(rep.all_pass());
    CHECK(rep.checked_vertices > 0);
    CHECK(rep.checked_mid == 0);  // vacuous for n = 2
    CHECK(rep.checked_facets > 0);
    CHECK(rep.disagreements.empty());
  }
  {
    DevelopedComplex dc = develop(fixtures::cube_3_torus(), 0, 2);
    AuditReport rep = residual_convexity_audit(dc);
    CHECK(rep.all_pass());
    CHECK(rep.checked_vertices > 0);
    CHECK(rep.checked_mid > 0);  // edge residues, 4 cubes each
    CHECK(rep.checked_facets > 0);
    CHECK(rep.disagreements.empty());
  }
  {
    DevelopedComplex dc = develop(fixtures::hexagon_torus(), 0, 2);
    AuditReport rep = residual_convexity_audit(dc);
    CHECK(!rep.cond1());  // three hexagons around a vertex: reflex angle
    CHECK(!rep.cond3());  // adjacent pair already non-convex
    CHECK(rep.disagreements.empty());
  }
}

TEST_CASE("good ridges: grid vertices good, 4-valent wallpaper vertices bad") {
  {
    DevelopedComplex dc = develop(fixtures::square_torus(), 0, 2);
    StrongReport rep = strong_residual_convexity_check(dc);
    CHECK(rep.checked > 0);
    CHECK(rep.all_good());
  }
  {
    DevelopedComplex dc = develop(fixtures::right_isosceles_wallpaper(), 0, 2);
    // Every fully explored 4-valent vertex (a square center) is bad.
    int four_valent = 0, bad_four = 0;
    std::set<DevFace> done;
    for (int c = 0; c < (int)dc.cells.size(); ++c) {
      const auto& p = dc.base(c);
      for (auto& f : p.faces) {
        if (f.fdim != 0) continue;
        DevFace st{c, f.id};
        if (done.count(st)) continue;
        FaceOrbit orbit = face_orbit(dc, st);
        for (auto& s : orbit.states) done.insert(s);
        if (!orbit.ok) continue;
        GoodRidgeReport g = good_ridge_check(dc, face_rep(orbit));
        REQUIRE(g.verdict != RidgeVerdict::undecided);
        if ((int)orbit.cells.size() == 4) {
          ++four_valent;
          if (g.verdict == RidgeVerdict::bad) ++bad_four;
        }
      }
    }
    CHECK(four_valent > 0);
    CHECK(bad_four == four_valent);
  }
}

TEST_CASE("certify: tori certified, hexagon rejected, benoist overlaps") {
  {
    CertifyReport rep = certify_convexity(fixtures::square_torus(), 0, 3);
    CHECK(rep.theorem_applicable);
    CHECK(rep.theorem_certified);
    CHECK(rep.direct_certified);
    CHECK(rep.paths_agree);
    for (auto& d : rep.per_depth) {
      CHECK(d.polyball);
      CHECK(d.convex);
      CHECK(d.antipodal);
    }
  }
  {
    CertifyReport rep = certify_convexity(fixtures::hexagon_torus(), 0, 1);
    CHECK(rep.theorem_applicable);
    CHECK(!rep.theorem_certified);
    CHECK(!rep.direct_certified);
    CHECK(rep.paths_agree);
  }
  {
    CertifyReport rep = certify_convexity(fixtures::benoist_triangles(), 0, 6);
    CHECK(!rep.theorem_applicable);  // triangular cells
    CHECK(rep.overlap);
    CHECK(!rep.direct_certified);
    CHECK(rep.verdict.find("not injective") != std::string::npos);
  }
}

TEST_CASE("galleries: straight strips with all invariants") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 4);
  for (int f = 0; f < dc.base(0).num_facets(); ++f) {
    Gallery gal = gallery_trace(dc, 0, f, 3);
    REQUIRE(gal.error.empty());
    CHECK(gal.ok);
    CHECK(gal.cells.size() == 5);
    for (bool b : gal.s_disjoint) CHECK(b);
    for (bool b : gal.s_on_boundary) CHECK(b);
    for (bool b : gal.partial_union_convex) CHECK(b);
    // The strip is a straight line of translates.
    for (size_t j = 0; j + 1 < gal.cells.size(); ++j)
      CHECK(dc.contact_dim(gal.cells[j], gal.cells[j + 1]) == s.d - 1);
    SupportReport sup = supporting_hyperplane(dc, gal);
    CHECK(sup.restrictions_hold());
    CHECK(!sup.stabilized);  // the estimates keep drifting toward the equator
  }
}

TEST_CASE("gallery aborts on cone-like cells") {
  // A triangle torus-like spec cannot exist; use a quick synthetic check via
  // the wallpaper fixture whose right isosceles triangles are cone-like.
  GluingSpec s = fixtures::right_isosceles_wallpaper();
  bool any_cone_like = false;
  for (auto& p : s.polytopes) any_cone_like |= is_cone_like(p).first;
  REQUIRE(any_cone_like);
  DevelopedComplex dc = develop(s, 0, 1);
  Gallery gal = gallery_trace(dc, 0, 0, 2);
  CHECK(!gal.ok);
  CHECK(gal.error.find("cone-like") != std::string::npos);
}

TEST_CASE("proper convexity certificate: square torus has none") {
  GluingSpec s = fixtures::square_torus();
  DevelopedComplex dc = develop(s, 0, 5);
  SupportCertificate cert = proper_convexity_certificate(dc, 0, 4);
  CHECK(!cert.found);
  CHECK(cert.message.find("no certificate") != std::string::npos);
  // Consistent with hypothesis (II): the dual of the square is thin.
  auto th = thickness_scan(s);
  CHECK(!th[0].second);
}

TEST_CASE("general position of coordinate hyperplanes") {
  Mat<Rat> normals;
  for (int i = 0; i < 3; ++i) {
    Vec<Rat> u = zero_vec<Rat>(3);
    u[i] = Rat(1);
    normals.push_back(u);
  }
  CHECK(hyperplanes_general_position(normals, 3));
  normals.pop_back();
  normals.push_back(normals[0]);
  CHECK(!hyperplanes_general_position(normals, 3));
}
