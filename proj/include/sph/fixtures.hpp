#pragma once
// Gluing-spec fixtures: tori, the Benoist triangle annulus, the hexagon
// torus, and the right-isosceles wallpaper pattern.

#include "sph/complex.hpp"

namespace sph::fixtures {

inline Vec<Rat> ray(std::vector<long> xs) {
  Vec<Rat> v;
  for (long x : xs) v.push_back(Rat(x));
  canon_positive_scale(v);
  return v;
}

inline int find_facet(const Polytope<Rat>& p, Mat<Rat> rays) {
  for (auto& r : rays) canon_positive_scale(r);
  auto id = face_with_rays(p, std::move(rays));
  if (!id || p.faces[*id].fdim != p.dim - 1)
    throw std::logic_error("fixture facet lookup failed");
  return p.faces[*id].facet_set[0];
}

inline void glue(GluingSpec& s, int pid, Mat<Rat> from_rays, int qid,
                 Mat<Rat> to_rays, Mat<Rat> m) {
  Transform phi = Transform::from_matrix(std::move(m));
  FacetRef f{pid, find_facet(s.poly(pid), std::move(from_rays))};
  FacetRef t{qid, find_facet(s.poly(qid), std::move(to_rays))};
  s.pairings.push_back({f, t, phi});
  s.pairings.push_back({t, f, phi.inverse()});
}

inline Mat<Rat> translation2(long dx, long dy) {
  return {{Rat(1), Rat(0), Rat(dx)}, {Rat(0), Rat(1), Rat(dy)},
          {Rat(0), Rat(0), Rat(1)}};
}

inline Mat<Rat> translation3(long dx, long dy, long dz) {
  return {{Rat(1), Rat(0), Rat(0), Rat(dx)},
          {Rat(0), Rat(1), Rat(0), Rat(dy)},
          {Rat(0), Rat(0), Rat(1), Rat(dz)},
          {Rat(0), Rat(0), Rat(0), Rat(1)}};
}

inline GluingSpec square_torus() {
  GluingSpec s;
  s.d = 3;
  s.names = {"square"};
  s.polytopes.push_back(polytope_from_vertices<Rat>(
      {ray({0, 0, 1}), ray({1, 0, 1}), ray({1, 1, 1}), ray({0, 1, 1})}, 3));
  glue(s, 0, {ray({0, 0, 1}), ray({0, 1, 1})}, 0,
       {ray({1, 0, 1}), ray({1, 1, 1})}, translation2(1, 0));
  glue(s, 0, {ray({0, 0, 1}), ray({1, 0, 1})}, 0,
       {ray({0, 1, 1}), ray({1, 1, 1})}, translation2(0, 1));
  return s;
}

inline GluingSpec cube_3_torus() {
  GluingSpec s;
  s.d = 4;
  s.names = {"cube"};
  Mat<Rat> verts;
  for (int b = 0; b < 8; ++b)
    verts.push_back(ray({b & 1, (b >> 1) & 1, (b >> 2) & 1, 1}));
  s.polytopes.push_back(polytope_from_vertices(verts, 4));
  auto face = [&](int axis, long val) {
    Mat<Rat> rays;
    for (auto& v : verts)
      if (v[axis] == Rat(val)) rays.push_back(v);
    return rays;
  };
  glue(s, 0, face(0, 0), 0, face(0, 1), translation3(1, 0, 0));
  glue(s, 0, face(1, 0), 0, face(1, 1), translation3(0, 1, 0));
  glue(s, 0, face(2, 0), 0, face(2, 1), translation3(0, 0, 1));
  return s;
}

inline GluingSpec benoist_triangles() {
  // Quadrilateral (1,0),(2,0),(0,1),(0,2) cut into four triangles: first
  // along the diagonal symmetry line y = x through (1/2,1/2) and (1,1), then
  // each half-quad along its diagonal to the axis corner. Glued by the
  // homothety by 2, the rotation by pi/2, and identities; every edge union
  // stays within a halfplane, unlike the both-diagonals decomposition.
  GluingSpec s;
  s.d = 3;
  s.names = {"Cx", "Dx", "Cy", "Dy"};
  Vec<Rat> a1 = ray({1, 0, 1}), a2 = ray({2, 0, 1});
  Vec<Rat> b1 = ray({0, 1, 1}), b2 = ray({0, 2, 1});
  Vec<Rat> m = ray({1, 1, 2}), n = ray({1, 1, 1});
  s.polytopes.push_back(polytope_from_vertices<Rat>({a1, a2, n}, 3));  // Cx
  s.polytopes.push_back(polytope_from_vertices<Rat>({a1, n, m}, 3));   // Dx
  s.polytopes.push_back(polytope_from_vertices<Rat>({b1, b2, n}, 3));  // Cy
  s.polytopes.push_back(polytope_from_vertices<Rat>({b1, n, m}, 3));   // Dy
  Mat<Rat> homothety = {{Rat(2), Rat(0), Rat(0)},
                        {Rat(0), Rat(2), Rat(0)},
                        {Rat(0), Rat(0), Rat(1)}};
  Mat<Rat> rot = {{Rat(0), Rat(-1), Rat(0)},
                  {Rat(1), Rat(0), Rat(0)},
                  {Rat(0), Rat(0), Rat(1)}};
  Mat<Rat> id = identity_mat<Rat>(3);
  glue(s, 0, {a1, a2}, 2, {b1, b2}, rot);
  glue(s, 1, {a1, m}, 0, {a2, n}, homothety);
  glue(s, 3, {b1, m}, 2, {b2, n}, homothety);
  glue(s, 0, {a1, n}, 1, {a1, n}, id);
  glue(s, 2, {b1, n}, 3, {b1, n}, id);
  glue(s, 1, {m, n}, 3, {m, n}, id);
  return s;
}

inline GluingSpec hexagon_torus() {
  GluingSpec s;
  s.d = 3;
  s.names = {"hexagon"};
  Vec<Rat> v0 = ray({1, 0, 1}), v1 = ray({0, 1, 1}), v2 = ray({-1, 1, 1});
  Vec<Rat> v3 = ray({-1, 0, 1}), v4 = ray({0, -1, 1}), v5 = ray({1, -1, 1});
  s.polytopes.push_back(polytope_from_vertices<Rat>({v0, v1, v2, v3, v4, v5}, 3));
  glue(s, 0, {v3, v4}, 0, {v0, v1}, translation2(1, 1));
  glue(s, 0, {v4, v5}, 0, {v1, v2}, translation2(-1, 2));
  glue(s, 0, {v5, v0}, 0, {v2, v3}, translation2(-2, 1));
  return s;
}

inline GluingSpec right_isosceles_wallpaper() {
  // Unit square cut by both diagonals into four right isosceles triangles
  // around the center; diagonal gluings are identities, outer edges close up
  // as a torus. The center vertex has valency 4.
  GluingSpec s;
  s.d = 3;
  s.names = {"T-bottom", "T-right", "T-top", "T-left"};
  Vec<Rat> q00 = ray({0, 0, 1}), q10 = ray({1, 0, 1});
  Vec<Rat> q11 = ray({1, 1, 1}), q01 = ray({0, 1, 1});
  Vec<Rat> c = ray({1, 1, 2});
  s.polytopes.push_back(polytope_from_vertices<Rat>({q00, q10, c}, 3));
  s.polytopes.push_back(polytope_from_vertices<Rat>({q10, q11, c}, 3));
  s.polytopes.push_back(polytope_from_vertices<Rat>({q11, q01, c}, 3));
  s.polytopes.push_back(polytope_from_vertices<Rat>({q01, q00, c}, 3));
  Mat<Rat> id = identity_mat<Rat>(3);
  glue(s, 0, {q10, c}, 1, {q10, c}, id);
  glue(s, 1, {q11, c}, 2, {q11, c}, id);
  glue(s, 2, {q01, c}, 3, {q01, c}, id);
  glue(s, 3, {q00, c}, 0, {q00, c}, id);
  glue(s, 0, {q00, q10}, 2, {q01, q11}, translation2(0, 1));
  glue(s, 1, {q10, q11}, 3, {q00, q01}, translation2(-1, 0));
  return s;
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {
      "square-torus", "cube-3-torus", "benoist-triangles", "hexagon-torus",
      "right-isosceles-wallpaper"};
  return n;
}

inline GluingSpec get(const std::string& name) {
  if (name == "square-torus") return square_torus();
  if (name == "cube-3-torus") return cube_3_torus();
  if (name == "benoist-triangles") return benoist_triangles();
  if (name == "hexagon-torus") return hexagon_torus();
  if (name == "right-isosceles-wallpaper") return right_isosceles_wallpaper();
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace sph::fixtures
