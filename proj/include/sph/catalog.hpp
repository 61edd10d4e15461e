#pragma once
// Named polytope catalog shared by the CLI fixtures and the test suites.
// Exact entries use rational homogeneous coordinates (last entry the chart
// coordinate); the icosahedron and dodecahedron need the golden ratio and are
// float-backend only.

#include <cmath>
#include <string>
#include <vector>

#include "sph/polytope.hpp"

namespace sph::catalog {

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {
      "triangle",       "square",         "pentagon",       "hexagon",
      "tetrahedron",    "cube",           "octahedron",     "square-pyramid",
      "pentagonal-prism", "truncated-cube", "icosahedron",  "dodecahedron"};
  return n;
}

inline bool is_float_only(const std::string& name) {
  return name == "icosahedron" || name == "dodecahedron";
}

inline std::vector<std::vector<long>> exact_rays(const std::string& name) {
  if (name == "triangle") return {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
  if (name == "square")
    return {{-1, -1, 1}, {1, -1, 1}, {1, 1, 1}, {-1, 1, 1}};
  if (name == "pentagon")
    return {{5, 0, 5}, {3, 4, 5}, {-3, 4, 5}, {-4, -3, 5}, {4, -3, 5}};
  if (name == "hexagon")
    return {{1, 0, 1}, {0, 1, 1}, {-1, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {1, -1, 1}};
  if (name == "tetrahedron")
    return {{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  if (name == "cube") {
    std::vector<std::vector<long>> v;
    for (int s = 0; s < 8; ++s)
      v.push_back({s & 1 ? 1 : -1, s & 2 ? 1 : -1, s & 4 ? 1 : -1, 1});
    return v;
  }
  if (name == "octahedron")
    return {{1, 0, 0, 1},  {-1, 0, 0, 1}, {0, 1, 0, 1},
            {0, -1, 0, 1}, {0, 0, 1, 1},  {0, 0, -1, 1}};
  if (name == "square-pyramid")
    return {{1, 1, 0, 1}, {1, -1, 0, 1}, {-1, 1, 0, 1}, {-1, -1, 0, 1},
            {0, 0, 1, 1}};
  if (name == "pentagonal-prism") {
    std::vector<std::vector<long>> v;
    for (auto& p : exact_rays("pentagon")) {
      v.push_back({p[0], p[1], 0, 5});
      v.push_back({p[0], p[1], 5, 5});
    }
    return v;
  }
  if (name == "truncated-cube") {
    // Cube with the corner (1,1,1) cut by the plane x + y + z = 2.
    std::vector<std::vector<long>> v;
    for (int s = 0; s < 8; ++s) {
      std::vector<long> c = {s & 1 ? 1 : -1, s & 2 ? 1 : -1, s & 4 ? 1 : -1, 1};
      if (c[0] == 1 && c[1] == 1 && c[2] == 1) continue;
      v.push_back(c);
    }
    v.push_back({1, 1, 0, 1});
    v.push_back({1, 0, 1, 1});
    v.push_back({0, 1, 1, 1});
    return v;
  }
  throw std::invalid_argument("no exact coordinates for " + name);
}

inline std::vector<std::vector<double>> float_rays(const std::string& name) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  if (name == "icosahedron") {
    std::vector<std::vector<double>> v;
    for (int sa = -1; sa <= 1; sa += 2)
      for (int sb = -1; sb <= 1; sb += 2) {
        v.push_back({0, sa * 1.0, sb * phi, 1});
        v.push_back({sa * 1.0, sb * phi, 0, 1});
        v.push_back({sb * phi, 0, sa * 1.0, 1});
      }
    return v;
  }
  if (name == "dodecahedron") {
    std::vector<std::vector<double>> v;
    for (int sa = -1; sa <= 1; sa += 2)
      for (int sb = -1; sb <= 1; sb += 2) {
        v.push_back({0, sa / phi, sb * phi, 1});
        v.push_back({sa / phi, sb * phi, 0, 1});
        v.push_back({sb * phi, 0, sa / phi, 1});
      }
    for (int s = 0; s < 8; ++s)
      v.push_back({s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0, s & 4 ? 1.0 : -1.0, 1});
    return v;
  }
  // Exact entries converted for the float backend.
  std::vector<std::vector<double>> v;
  for (auto& r : exact_rays(name)) {
    std::vector<double> row;
    for (long x : r) row.push_back((double)x);
    v.push_back(std::move(row));
  }
  return v;
}

inline Polytope<Rat> build(const std::string& name) {
  Mat<Rat> rays;
  for (auto& r : exact_rays(name)) {
    Vec<Rat> row;
    for (long x : r) row.push_back(Rat(x));
    rays.push_back(std::move(row));
  }
  return polytope_from_vertices(std::move(rays), (int)rays[0].size());
}

inline Polytope<Approx> build_float(const std::string& name) {
  Mat<Approx> rays;
  for (auto& r : float_rays(name)) {
    Vec<Approx> row;
    for (double x : r) row.push_back(Approx(x));
    rays.push_back(std::move(row));
  }
  return polytope_from_vertices(std::move(rays), (int)rays[0].size());
}

}  // namespace sph::catalog
