#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sph/fixtures.hpp"
#include "sph/io.hpp"

using namespace sph;
using io::Json;

TEST_CASE("spec documents round-trip through parse and serialize") {
  for (auto& name : fixtures::names()) {
    CAPTURE(name);
    GluingSpec s = fixtures::get(name);
    Json doc = io::serialize_spec(s);
    GluingSpec back = io::parse_spec(doc);
    CHECK(back.d == s.d);
    CHECK(back.names == s.names);
    CHECK(back.pairings.size() == s.pairings.size());
    // Second trip is exact: the document is a fixed point.
    CHECK(io::serialize_spec(back) == doc);
    // And the reparse behaves identically.
    auto v1 = validate(s);
    auto v2 = validate(back);
    CHECK(v1.valid() == v2.valid());
    auto p1 = poincare_check(s);
    auto p2 = poincare_check(back);
    REQUIRE(p1.size() == p2.size());
    for (size_t i = 0; i < p1.size(); ++i) CHECK(p1[i].pass() == p2[i].pass());
  }
}

TEST_CASE("reports are invariant under pairing-list reordering") {
  GluingSpec s = fixtures::benoist_triangles();
  GluingSpec r = s;
  std::reverse(r.pairings.begin(), r.pairings.end());
  CHECK(validate(r).valid());
  auto count_convex = [](const GluingSpec& g) {
    int n = 0;
    for (auto& rep : residual_convexity_check(g))
      if (rep.convex_ridge_link) ++n;
    return n;
  };
  CHECK(count_convex(s) == count_convex(r));
  auto c1 = ridge_cycles(s);
  auto c2 = ridge_cycles(r);
  std::multiset<int> per1, per2;
  for (auto& c : c1) per1.insert(c.period);
  for (auto& c : c2) per2.insert(c.period);
  CHECK(per1 == per2);
}

TEST_CASE("parse errors name the offending field") {
  Json doc = io::serialize_spec(fixtures::square_torus());

  SUBCASE("zero denominator") {
    doc["polytopes"][0]["vertices"][1][2] = "1/0";
    try {
      io::parse_spec(doc);
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(e.path == "$.polytopes[0].vertices[1][2]");
      CHECK(std::string(e.what()).find("1/0") != std::string::npos);
    }
  }
  SUBCASE("malformed rational") {
    doc["pairings"][0]["matrix"][0][0] = "two";
    try {
      io::parse_spec(doc);
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(e.path == "$.pairings[0].matrix[0][0]");
    }
  }
  SUBCASE("unknown polytope reference") {
    doc["pairings"][0]["from"]["polytope"] = "ghost";
    try {
      io::parse_spec(doc);
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(e.path == "$.pairings[0].from.polytope");
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
  }
  SUBCASE("wrong vertex length") {
    doc["polytopes"][0]["vertices"][0] = Json::array({"1", "0"});
    CHECK_THROWS_AS(io::parse_spec(doc), io::SpecError);
  }
  SUBCASE("rays that span no facet") {
    doc["pairings"][0]["from"]["facet"] = Json::array(
        {Json::array({"0", "0", "1"}), Json::array({"1", "1", "1"})});
    try {
      io::parse_spec(doc);
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(e.path == "$.pairings[0].from.facet");
    }
  }
  SUBCASE("missing field") {
    doc.erase("dimension");
    try {
      io::parse_spec(doc);
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(e.path == "$.dimension");
    }
  }
  SUBCASE("duplicate polytope name") {
    doc["polytopes"].push_back(doc["polytopes"][0]);
    CHECK_THROWS_AS(io::parse_spec(doc), io::SpecError);
  }
  SUBCASE("malformed JSON text") {
    try {
      io::parse_spec_text("{not json");
      FAIL("expected SpecError");
    } catch (const io::SpecError& e) {
      CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
    }
  }
}

TEST_CASE("svg rendering is deterministic and well formed") {
  DevelopedComplex dc = develop(fixtures::square_torus(), 0, 2);
  std::string a = io::render_svg(dc);
  std::string b = io::render_svg(dc);
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  // 25 cells of the depth-2 star, all drawn.
  size_t polys = 0;
  for (size_t pos = 0; (pos = a.find("<polygon", pos)) != std::string::npos; ++pos)
    ++polys;
  CHECK(polys == dc.cells.size());
  CHECK(a.find("warning") == std::string::npos);  // all cells in the chart

  SUBCASE("gallery stroking and marks") {
    io::SvgOptions opt;
    opt.galleries.push_back({0, 1});
    opt.marks.push_back({0.5, 0.5});
    std::string g = io::render_svg(dc, opt);
    CHECK(g.find("#bb2200") != std::string::npos);
    CHECK(g.find("<circle") != std::string::npos);
    CHECK(io::render_svg(dc, opt) == g);
  }
  SUBCASE("3d complexes are rejected") {
    DevelopedComplex cube = develop(fixtures::cube_3_torus(), 0, 1);
    CHECK_THROWS_AS(io::render_svg(cube), std::invalid_argument);
  }
}
