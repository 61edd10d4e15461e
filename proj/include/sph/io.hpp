#pragma once
// JSON spec documents and the 2D SVG renderer. The document schema:
//   { "dimension": n, "polytopes": [{"name", "vertices": [["p/q", ...]]}],
//     "pairings": [{"from": {"polytope", "facet": [[...]]},
//                   "to": {...}, "matrix": [["p/q", ...]]}] }
// Facets are referenced by their vertex rays so documents stay stable under
// internal face renumbering.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "sph/developer.hpp"

namespace sph::io {

using Json = nlohmann::ordered_json;

struct SpecError : std::runtime_error {
  std::string path;
  SpecError(std::string p, const std::string& msg)
      : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(path + "." + key, "missing field");
  return *it;
}

inline Rat parse_rat(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SpecError(path, "expected a rational string \"p/q\"");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  }
}

inline Vec<Rat> parse_vec(const Json& j, int d, const std::string& path) {
  if (!j.is_array() || (int)j.size() != d)
    throw SpecError(path, "expected an array of " + std::to_string(d) + " rationals");
  Vec<Rat> v;
  for (int i = 0; i < d; ++i)
    v.push_back(parse_rat(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Mat<Rat> parse_mat(const Json& j, int d, const std::string& path) {
  if (!j.is_array() || (int)j.size() != d)
    throw SpecError(path, "expected a " + std::to_string(d) + "x" +
                              std::to_string(d) + " matrix");
  Mat<Rat> m;
  for (int i = 0; i < d; ++i)
    m.push_back(parse_vec(j[i], d, path + "[" + std::to_string(i) + "]"));
  return m;
}

inline int resolve_polytope(const GluingSpec& s, const std::string& name,
                            const std::string& path) {
  for (int i = 0; i < (int)s.names.size(); ++i)
    if (s.names[i] == name) return i;
  throw SpecError(path, "unknown polytope reference '" + name + "'");
}

inline int resolve_facet(const Polytope<Rat>& p, Mat<Rat> rays,
                         const std::string& path) {
  for (auto& r : rays) canon_positive_scale(r);
  auto id = face_with_rays(p, std::move(rays));
  if (!id || p.faces[*id].fdim != p.dim - 1)
    throw SpecError(path, "rays do not span a facet of the polytope");
  return p.faces[*id].facet_set[0];
}

}  // namespace detail

inline GluingSpec parse_spec(const Json& doc) {
  using detail::field;
  const Json& jdim = field(doc, "dimension", "$");
  if (!jdim.is_number_integer() || jdim.get<int>() < 1)
    throw SpecError("$.dimension", "expected a positive integer");
  GluingSpec s;
  s.d = jdim.get<int>() + 1;
  const Json& jpolys = field(doc, "polytopes", "$");
  if (!jpolys.is_array() || jpolys.empty())
    throw SpecError("$.polytopes", "expected a nonempty array");
  for (int i = 0; i < (int)jpolys.size(); ++i) {
    std::string path = "$.polytopes[" + std::to_string(i) + "]";
    const Json& jname = field(jpolys[i], "name", path);
    if (!jname.is_string()) throw SpecError(path + ".name", "expected a string");
    std::string name = jname.get<std::string>();
    for (auto& n : s.names)
      if (n == name) throw SpecError(path + ".name", "duplicate name '" + name + "'");
    const Json& jverts = field(jpolys[i], "vertices", path);
    if (!jverts.is_array() || jverts.empty())
      throw SpecError(path + ".vertices", "expected a nonempty array");
    Mat<Rat> rays;
    for (int v = 0; v < (int)jverts.size(); ++v)
      rays.push_back(detail::parse_vec(jverts[v], s.d,
                                       path + ".vertices[" + std::to_string(v) + "]"));
    try {
      s.polytopes.push_back(polytope_from_vertices(std::move(rays), s.d));
    } catch (const std::invalid_argument& e) {
      throw SpecError(path + ".vertices", e.what());
    }
    s.names.push_back(std::move(name));
  }
  const Json& jpairs = field(doc, "pairings", "$");
  if (!jpairs.is_array()) throw SpecError("$.pairings", "expected an array");
  for (int i = 0; i < (int)jpairs.size(); ++i) {
    std::string path = "$.pairings[" + std::to_string(i) + "]";
    auto parse_ref = [&](const char* key) -> FacetRef {
      const Json& jref = field(jpairs[i], key, path);
      std::string rpath = path + "." + key;
      const Json& jpoly = field(jref, "polytope", rpath);
      if (!jpoly.is_string())
        throw SpecError(rpath + ".polytope", "expected a string");
      int pid = detail::resolve_polytope(s, jpoly.get<std::string>(),
                                         rpath + ".polytope");
      const Json& jfacet = field(jref, "facet", rpath);
      if (!jfacet.is_array())
        throw SpecError(rpath + ".facet", "expected an array of vertices");
      Mat<Rat> rays;
      for (int v = 0; v < (int)jfacet.size(); ++v)
        rays.push_back(detail::parse_vec(jfacet[v], s.d,
                                         rpath + ".facet[" + std::to_string(v) + "]"));
      return {pid, detail::resolve_facet(s.poly(pid), std::move(rays),
                                         rpath + ".facet")};
    };
    FacetRef from = parse_ref("from");
    FacetRef to = parse_ref("to");
    Mat<Rat> m = detail::parse_mat(field(jpairs[i], "matrix", path), s.d,
                                   path + ".matrix");
    try {
      s.pairings.push_back({from, to, Transform::from_matrix(std::move(m))});
    } catch (const std::invalid_argument& e) {
      throw SpecError(path + ".matrix", e.what());
    }
  }
  return s;
}

inline GluingSpec parse_spec_text(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SpecError("$", "malformed JSON");
  return parse_spec(doc);
}

inline Json rat_vec_json(const Vec<Rat>& v) {
  Json out = Json::array();
  for (auto& x : v) out.push_back(rat_to_string(x));
  return out;
}

inline Json serialize_spec(const GluingSpec& s) {
  Json doc;
  doc["dimension"] = s.d - 1;
  doc["polytopes"] = Json::array();
  for (int i = 0; i < (int)s.polytopes.size(); ++i) {
    Json jp;
    jp["name"] = s.names[i];
    jp["vertices"] = Json::array();
    for (auto& g : s.poly(i).cone.generators) jp["vertices"].push_back(rat_vec_json(g));
    doc["polytopes"].push_back(std::move(jp));
  }
  doc["pairings"] = Json::array();
  for (auto& pr : s.pairings) {
    Json jp;
    auto ref = [&](FacetRef f) {
      Json jr;
      jr["polytope"] = s.names[f.pid];
      jr["facet"] = Json::array();
      for (auto& r : face_rays(s.poly(f.pid), s.facet_face(f)))
        jr["facet"].push_back(rat_vec_json(r));
      return jr;
    };
    jp["from"] = ref(pr.from);
    jp["to"] = ref(pr.to);
    jp["matrix"] = Json::array();
    for (auto& row : pr.phi.m) jp["matrix"].push_back(rat_vec_json(row));
    doc["pairings"].push_back(std::move(jp));
  }
  return doc;
}

// --- SVG rendering (n = 2, affine chart z = 1, gnomonic) --------------------

struct SvgOptions {
  std::vector<std::vector<int>> galleries;         // cell id sequences to stroke
  std::vector<std::pair<double, double>> marks;    // chart points (bad ridges)
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x + 0.0);  // avoid -0.0000
  return buf;
}

// Projected cell corners in cyclic order (angular sort around the centroid).
inline std::vector<std::pair<double, double>> chart_polygon(
    const DevelopedComplex& dc, int c, bool& clipped) {
  std::vector<std::pair<double, double>> pts;
  for (auto& g : dc.cells[c].shape.generators) {
    double z = qdouble(g[2]);
    if (z <= 0) {
      clipped = true;
      return {};
    }
    pts.push_back({qdouble(g[0]) / z, qdouble(g[1]) / z});
  }
  double cx = 0, cy = 0;
  for (auto& [x, y] : pts) {
    cx += x;
    cy += y;
  }
  cx /= (double)pts.size();
  cy /= (double)pts.size();
  std::sort(pts.begin(), pts.end(), [&](auto& a, auto& b) {
    return std::atan2(a.second - cy, a.first - cx) <
           std::atan2(b.second - cy, b.first - cx);
  });
  return pts;
}

}  // namespace detail

inline std::string render_svg(const DevelopedComplex& dc,
                              const SvgOptions& opt = {}) {
  if (dc.spec->d != 3)
    throw std::invalid_argument("render_svg: only 2-dimensional complexes");
  std::vector<std::vector<std::pair<double, double>>> polys(dc.cells.size());
  int clipped = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (int c = 0; c < (int)dc.cells.size(); ++c) {
    bool clip = false;
    polys[c] = detail::chart_polygon(dc, c, clip);
    if (clip) {
      ++clipped;
      continue;
    }
    for (auto& [x, y] : polys[c]) {
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const double margin = 0.5;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  svg += detail::fmt(xmin - margin) + " " + detail::fmt(-ymax - margin) + " " +
         detail::fmt(xmax - xmin + 2 * margin) + " " +
         detail::fmt(ymax - ymin + 2 * margin) + "\">\n";
  if (clipped > 0)
    svg += "<!-- warning: " + std::to_string(clipped) +
           " cell(s) outside the z=1 chart were clipped -->\n";
  auto polygon = [&](int c, const std::string& style) {
    std::string e = "<polygon points=\"";
    bool first = true;
    for (auto& [x, y] : polys[c]) {
      if (!first) e += " ";
      first = false;
      e += detail::fmt(x) + "," + detail::fmt(-y);  // y up
    }
    return e + "\" " + style + "/>\n";
  };
  for (int c = 0; c < (int)dc.cells.size(); ++c) {
    if (polys[c].empty()) continue;
    int depth = dc.cells[c].depth;
    int shade = depth < 0 ? 248 : std::max(120, 232 - 16 * depth);
    char fill[16];
    std::snprintf(fill, sizeof fill, "#%02x%02x%02x", shade, shade, shade);
    svg += polygon(c, "fill=\"" + std::string(fill) +
                          "\" stroke=\"#444444\" stroke-width=\"0.02\"");
  }
  for (auto& gal : opt.galleries)
    for (int c : gal) {
      if (c < 0 || c >= (int)polys.size() || polys[c].empty()) continue;
      svg += polygon(c, "fill=\"none\" stroke=\"#bb2200\" stroke-width=\"0.05\"");
    }
  for (auto& [x, y] : opt.marks)
    svg += "<circle cx=\"" + detail::fmt(x) + "\" cy=\"" + detail::fmt(-y) +
           "\" r=\"0.08\" fill=\"#bb2200\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace sph::io
