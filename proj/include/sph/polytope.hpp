#pragma once
// Spherical polytopes: pointed cones with full face lattices, links, polar
// duals, and the classification predicates (triangular, cone-like, thin,
// pavilions).

#include <cstdint>
#include <functional>
#include <optional>
#include <set>

#include "sph/cone.hpp"

namespace sph {

template <class Q>
struct Polytope {
  Cone<Q> cone;
  int dim = 0;       // spherical dimension
  Mat<Q> facets;     // facet normals, lexicographically sorted (canonical)
  Mat<Q> equations;  // basis of span(P)^perp (empty when full-dimensional)

  struct Face {
    int id = 0;
    int fdim = 0;                 // spherical dimension of the face
    std::vector<int> facet_set;   // indices of all facets containing the face
    std::vector<int> vertex_set;  // indices into cone.generators
  };
  std::vector<Face> faces;  // all proper nonempty faces, sorted by (fdim, vertex_set)

  const Mat<Q>& vertices() const { return cone.generators; }
  int num_vertices() const { return (int)cone.generators.size(); }
  int num_facets() const { return (int)facets.size(); }

  std::vector<int> faces_of_dim(int k) const {
    std::vector<int> out;
    for (auto& f : faces)
      if (f.fdim == k) out.push_back(f.id);
    return out;
  }

  std::vector<int> f_vector() const {
    std::vector<int> fv(dim, 0);
    for (auto& f : faces)
      if (f.fdim < dim) ++fv[f.fdim];
    return fv;
  }

  // Face lookup by exact vertex set.
  std::optional<int> face_with_vertices(const std::vector<int>& vs) const {
    for (auto& f : faces)
      if (f.vertex_set == vs) return f.id;
    return std::nullopt;
  }

  // A facet's defining set is exactly itself.
  int facet_face_id(int facet_idx) const {
    for (auto& f : faces)
      if (f.fdim == dim - 1 && f.facet_set == std::vector<int>{facet_idx}) return f.id;
    throw std::logic_error("facet face not found");
  }

  // Vertices joined to vertex v by an edge (1-face).
  std::vector<int> vertex_neighbors(int v) const {
    std::vector<int> nb;
    for (auto& f : faces) {
      if (f.fdim != 1) continue;
      if (f.vertex_set.size() == 2) {
        if (f.vertex_set[0] == v) nb.push_back(f.vertex_set[1]);
        if (f.vertex_set[1] == v) nb.push_back(f.vertex_set[0]);
      }
    }
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    return nb;
  }
};

// --- Construction ----------------------------------------------------------

template <class Q>
Polytope<Q> polytope_from_cone(Cone<Q> c) {
  if (!c.pointed()) throw std::invalid_argument("not a polytope: cone has lineality");
  if (c.is_zero()) throw std::invalid_argument("not a polytope: empty interior");
  Polytope<Q> p;
  p.dim = c.dim() - 1;

  // Split the canonical H-description into facet normals and +- equation
  // pairs (present only for cones that are not full-dimensional).
  for (auto& u : c.halfspaces) {
    Vec<Q> nu = vec_neg(u);
    canon_positive_scale(nu);
    bool paired = false;
    for (auto& w : c.halfspaces)
      if (vec_eq(w, nu)) {
        paired = true;
        break;
      }
    if (paired) {
      Vec<Q> e = u;
      canon_up_to_sign(e);
      bool seen = false;
      for (auto& w : p.equations)
        if (vec_eq(w, e)) seen = true;
      if (!seen) p.equations.push_back(e);
    } else {
      p.facets.push_back(u);
    }
  }
  std::sort(p.facets.begin(), p.facets.end(), lex_less<Q>);
  std::sort(p.equations.begin(), p.equations.end(), lex_less<Q>);
  p.cone = std::move(c);

  // Vertex sets of facets, then closure under pairwise intersection: every
  // proper face is an intersection of facets and is determined by its
  // extreme rays.
  int nv = p.num_vertices();
  std::vector<std::vector<int>> facet_verts(p.facets.size());
  for (size_t j = 0; j < p.facets.size(); ++j)
    for (int i = 0; i < nv; ++i)
      if (qsgn(dot(p.facets[j], p.cone.generators[i])) == 0)
        facet_verts[j].push_back(i);

  std::set<std::vector<int>> sets(facet_verts.begin(), facet_verts.end());
  sets.erase(std::vector<int>{});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(sets.begin(), sets.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<int> in;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(),
                              cur[b].end(), std::back_inserter(in));
        if (!in.empty() && !sets.count(in)) {
          sets.insert(in);
          grew = true;
        }
      }
  }

  for (auto& vs : sets) {
    typename Polytope<Q>::Face f;
    f.vertex_set = vs;
    Mat<Q> rays;
    for (int i : vs) rays.push_back(p.cone.generators[i]);
    f.fdim = rank_of(rays) - 1;
    for (size_t j = 0; j < p.facets.size(); ++j) {
      bool all = true;
      for (int i : vs)
        if (std::find(facet_verts[j].begin(), facet_verts[j].end(), i) ==
            facet_verts[j].end()) {
          all = false;
          break;
        }
      if (all) f.facet_set.push_back((int)j);
    }
    p.faces.push_back(std::move(f));
  }
  std::sort(p.faces.begin(), p.faces.end(), [](auto& a, auto& b) {
    if (a.fdim != b.fdim) return a.fdim < b.fdim;
    return a.vertex_set < b.vertex_set;
  });
  for (size_t i = 0; i < p.faces.size(); ++i) p.faces[i].id = (int)i;
  return p;
}

template <class Q>
Polytope<Q> polytope_from_halfspaces(Mat<Q> hs, int d) {
  return polytope_from_cone(cone_from_halfspaces(std::move(hs), d));
}

template <class Q>
Polytope<Q> polytope_from_vertices(Mat<Q> verts, int d) {
  return polytope_from_cone(cone_from_generators(std::move(verts), Mat<Q>{}, d));
}

// --- Links and duals -------------------------------------------------------

// Lk(f;P) = P_f cap L(f)^perp, realized in the ambient space.
template <class Q>
Polytope<Q> link_of(const Polytope<Q>& p, int face_id) {
  const auto& f = p.faces.at(face_id);
  Mat<Q> hs;
  for (int j : f.facet_set) hs.push_back(p.facets[j]);
  for (int i : f.vertex_set) {
    hs.push_back(p.cone.generators[i]);
    hs.push_back(vec_neg(p.cone.generators[i]));
  }
  for (auto& e : p.equations) {
    hs.push_back(e);
    hs.push_back(vec_neg(e));
  }
  return polytope_from_halfspaces(std::move(hs), p.cone.d);
}

// f_{(e;P)} = Lk(e;P) cap L(f) as a face id of link_of(p, e).
template <class Q>
int face_in_link(const Polytope<Q>& p, int e_id, int f_id,
                 const Polytope<Q>* link_hint = nullptr) {
  const auto& e = p.faces.at(e_id);
  const auto& f = p.faces.at(f_id);
  if (!std::includes(f.vertex_set.begin(), f.vertex_set.end(),
                     e.vertex_set.begin(), e.vertex_set.end()) ||
      e.vertex_set == f.vertex_set)
    throw std::invalid_argument("face_in_link requires e strictly inside f");
  Polytope<Q> link_local;
  const Polytope<Q>* link = link_hint;
  if (!link) {
    link_local = link_of(p, e_id);
    link = &link_local;
  }
  Mat<Q> fspan;
  for (int i : f.vertex_set) fspan.push_back(p.cone.generators[i]);
  auto sub = Subspace<Q>::from_vectors(fspan, p.cone.d);
  std::vector<int> vs;
  for (int i = 0; i < link->num_vertices(); ++i)
    if (sub.contains(link->cone.generators[i])) vs.push_back(i);
  auto id = link->face_with_vertices(vs);
  if (!id) throw std::logic_error("link face not found");
  return *id;
}

template <class Q>
Polytope<Q> dual_polytope(const Polytope<Q>& p) {
  if (!p.cone.full_dim())
    throw std::invalid_argument("dual requires a full-dimensional polytope");
  return polytope_from_cone(dual_cone(p.cone));
}

// --- Classifiers -----------------------------------------------------------

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int components(const std::vector<int>& nodes) {
    std::set<int> roots;
    for (int n : nodes) roots.insert(find(n));
    return (int)roots.size();
  }
};

inline std::vector<int> set_intersect(const std::vector<int>& a,
                                      const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool set_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Triangularity: some ridge e and face f with res(e;dP) cap f disconnected.
// The intersection is the subcomplex of faces inside sigma1 cap f or
// sigma2 cap f; connectivity is decided by union-find on its cells.
template <class Q>
std::pair<bool, std::optional<std::pair<int, int>>> is_triangular(
    const Polytope<Q>& p) {
  if (p.dim < 2) throw std::invalid_argument("is_triangular requires dim >= 2");
  auto facet_face_verts = [&](int j) {
    for (auto& f : p.faces)
      if (f.fdim == p.dim - 1 && f.facet_set == std::vector<int>{j})
        return f.vertex_set;
    throw std::logic_error("facet not in lattice");
  };
  for (auto& e : p.faces) {
    if (e.fdim != p.dim - 2) continue;
    if (e.facet_set.size() != 2) continue;  // ridge = intersection of two facets
    auto s1 = facet_face_verts(e.facet_set[0]);
    auto s2 = facet_face_verts(e.facet_set[1]);
    for (auto& f : p.faces) {
      auto f1 = detail::set_intersect(s1, f.vertex_set);
      auto f2 = detail::set_intersect(s2, f.vertex_set);
      if (f1.empty() || f2.empty()) continue;
      // Cells of the subcomplex: faces inside f1 or f2.
      std::vector<int> cells;
      for (auto& g : p.faces)
        if (detail::set_subset(g.vertex_set, f1) ||
            detail::set_subset(g.vertex_set, f2))
          cells.push_back(g.id);
      detail::UnionFind uf((int)p.faces.size());
      for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = a + 1; b < cells.size(); ++b) {
          auto& ga = p.faces[cells[a]].vertex_set;
          auto& gb = p.faces[cells[b]].vertex_set;
          if (detail::set_subset(ga, gb) || detail::set_subset(gb, ga))
            uf.unite(cells[a], cells[b]);
        }
      if (uf.components(cells) >= 2) return {true, {{e.id, f.id}}};
    }
  }
  return {false, std::nullopt};
}

// Cone-like: some facet meets every facet.
template <class Q>
std::pair<bool, std::optional<int>> is_cone_like(const Polytope<Q>& p) {
  if (p.dim < 2) throw std::invalid_argument("is_cone_like requires dim >= 2");
  std::vector<std::vector<int>> fverts(p.num_facets());
  for (auto& f : p.faces)
    if (f.fdim == p.dim - 1 && f.facet_set.size() == 1)
      fverts[f.facet_set[0]] = f.vertex_set;
  for (int s = 0; s < p.num_facets(); ++s) {
    bool all = true;
    for (int t = 0; t < p.num_facets(); ++t)
      if (detail::set_intersect(fverts[s], fverts[t]).empty()) {
        all = false;
        break;
      }
    if (all) return {true, s};
  }
  return {false, std::nullopt};
}

namespace detail {

// Strict separation of vertex rays: exists u with u(v) < 0 on side S and
// u(v) > 0 on the rest. Decided exactly via the relative-interior point of
// the cone of admissible u.
template <class Q>
std::optional<Vec<Q>> separating_covector(const Polytope<Q>& p, uint32_t mask) {
  Mat<Q> hs;
  int nv = p.num_vertices();
  for (int i = 0; i < nv; ++i) {
    if (mask >> i & 1)
      hs.push_back(p.cone.generators[i]);
    else
      hs.push_back(vec_neg(p.cone.generators[i]));
  }
  // Only a relative-interior point of the admissible cone is needed, so run
  // a single DD pass and sum the extreme rays.
  VRep<Q> vr = dd_pair(hs, p.cone.d);
  Vec<Q> u = zero_vec<Q>(p.cone.d);
  for (auto& r : vr.rays) u = vec_add(u, r);
  for (int i = 0; i < nv; ++i) {
    int s = qsgn(dot(u, p.cone.generators[i]));
    if ((mask >> i & 1) ? s >= 0 : s <= 0) return std::nullopt;
  }
  return u;
}

// Cutting-plane edge condition: every vertex has an edge-neighbor across.
inline bool edge_condition(const std::vector<uint32_t>& nbr_masks, uint32_t mask,
                           int nv) {
  for (int i = 0; i < nv; ++i) {
    uint32_t other = (mask >> i & 1) ? ~mask : mask;
    if (!(nbr_masks[i] & other)) return false;
  }
  return true;
}

}  // namespace detail

// Thin: a cutting hyperplane exists (no vertex on it; every vertex has an
// edge-neighbor on the other side). Search over linearly separable vertex
// bipartitions: brute force for |V| <= 20, hyperplane-spanned enumeration
// above that.
template <class Q>
std::pair<bool, std::optional<Vec<Q>>> is_thin(const Polytope<Q>& p) {
  int nv = p.num_vertices();
  if (nv > 31) throw std::invalid_argument("is_thin: too many vertices");
  std::vector<uint32_t> nbr(nv, 0);
  for (auto& f : p.faces)
    if (f.fdim == 1 && f.vertex_set.size() == 2) {
      nbr[f.vertex_set[0]] |= uint32_t(1) << f.vertex_set[1];
      nbr[f.vertex_set[1]] |= uint32_t(1) << f.vertex_set[0];
    }
  auto try_mask = [&](uint32_t mask) -> std::optional<Vec<Q>> {
    uint32_t all = nv == 32 ? ~uint32_t(0) : ((uint32_t(1) << nv) - 1);
    if ((mask & all) == 0 || (mask & all) == all) return std::nullopt;
    if (!detail::edge_condition(nbr, mask, nv)) return std::nullopt;
    return detail::separating_covector(p, mask);
  };
  if (nv <= 20) {
    for (uint32_t mask = 1; mask < (uint32_t(1) << (nv - 1)); ++mask) {
      auto u = try_mask(mask);
      if (u) return {true, *u};
    }
    return {false, std::nullopt};
  }
  // Candidate bipartitions realized by hyperplanes spanned by (d-1)-subsets
  // of vertex rays, with tied vertices distributed both ways (capped).
  int d = p.cone.d;
  std::set<uint32_t> tried;
  std::vector<int> comb(d - 1);
  std::optional<Vec<Q>> found;
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (found) return;
    if (k == d - 1) {
      Mat<Q> sub;
      for (int i : comb) sub.push_back(p.cone.generators[i]);
      Mat<Q> ker = kernel_basis(sub, d);
      if (ker.size() != 1) return;
      std::vector<int> zeros;
      uint32_t base = 0;
      for (int i = 0; i < nv; ++i) {
        int s = qsgn(dot(ker[0], p.cone.generators[i]));
        if (s < 0) base |= uint32_t(1) << i;
        if (s == 0) zeros.push_back(i);
      }
      if (zeros.size() > 12) return;  // cap per-candidate refinements
      for (uint32_t z = 0; z < (uint32_t(1) << zeros.size()); ++z) {
        uint32_t mask = base;
        for (size_t t = 0; t < zeros.size(); ++t)
          if (z >> t & 1) mask |= uint32_t(1) << zeros[t];
        if (tried.count(mask) || tried.count(~mask & ((uint32_t(1) << nv) - 1)))
          continue;
        tried.insert(mask);
        auto u = try_mask(mask);
        if (u) {
          found = *u;
          return;
        }
      }
      return;
    }
    for (int i = start; i < nv && !found; ++i) {
      comb[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  if (found) return {true, *found};
  return {false, std::nullopt};
}

// Does the hyperplane ker(h) meet every pavilion pv(v;P)?
template <class Q>
struct Pavilion {
  int vertex = 0;
  Cone<Q> pv;        // P(v) = cone over conv({-v} cup V(v))
  bool pv_full_dim = false;
};

template <class Q>
Pavilion<Q> pavilion(const Polytope<Q>& p, int vertex_face_id) {
  const auto& f = p.faces.at(vertex_face_id);
  if (f.fdim != 0) throw std::invalid_argument("pavilion requires a vertex");
  int v = f.vertex_set[0];
  Mat<Q> gens;
  gens.push_back(vec_neg(p.cone.generators[v]));
  for (int w : p.vertex_neighbors(v)) gens.push_back(p.cone.generators[w]);
  Pavilion<Q> out;
  out.vertex = v;
  out.pv = cone_from_generators(std::move(gens), Mat<Q>{}, p.cone.d);
  out.pv_full_dim = out.pv.full_dim();
  return out;
}

// x in P^circ (ambient interior; requires full-dimensional P).
template <class Q>
bool in_interior(const Polytope<Q>& p, const Vec<Q>& x) {
  if (!p.equations.empty()) return false;
  for (auto& u : p.facets)
    if (qsgn(dot(u, x)) >= 0) return false;
  return true;
}

template <class Q>
bool pavilion_contains(const Polytope<Q>& p, const Pavilion<Q>& pav,
                       const Vec<Q>& x) {
  if (!in_interior(p, x)) return false;
  if (!pav.pv_full_dim) return true;  // P(v) has empty interior: pv = P^circ
  for (auto& u : pav.pv.halfspaces)
    if (qsgn(dot(u, x)) >= 0) return true;  // outside the open P(v)
  return false;
}

template <class Q>
bool pavilion_base_contains(const Polytope<Q>& p, const Pavilion<Q>& pav,
                            const Vec<Q>& x) {
  if (!in_interior(p, x)) return false;
  if (!pav.pv.contains(x)) return false;
  for (auto& u : pav.pv.halfspaces)
    if (qsgn(dot(u, x)) == 0) return true;
  return false;
}

template <class Q>
bool pavilion_hyperplane_test(const Polytope<Q>& p, const Vec<Q>& h) {
  if (!p.equations.empty())
    throw std::invalid_argument("pavilion test requires full-dimensional P");
  auto meets_interior_with = [&](const Mat<Q>& extra) {
    // Is there x with h(x)=0, x in P^circ, and extra(x) <= 0 feasible region?
    Mat<Q> hs = p.cone.halfspaces;
    hs.push_back(h);
    hs.push_back(vec_neg(h));
    for (auto& u : extra) hs.push_back(u);
    Cone<Q> a = cone_from_halfspaces(hs, p.cone.d);
    Vec<Q> x = a.relint_point();
    if (is_zero_vec(x)) return false;
    for (auto& u : p.facets)
      if (qsgn(dot(u, x)) >= 0) return false;
    return true;
  };
  for (auto& f : p.faces) {
    if (f.fdim != 0) continue;
    Pavilion<Q> pav = pavilion(p, f.id);
    bool met = false;
    if (!pav.pv_full_dim) {
      met = meets_interior_with({});
    } else {
      for (auto& w : pav.pv.halfspaces) {
        if (meets_interior_with({vec_neg(w)})) {  // w(x) >= 0: outside P(v)^circ
          met = true;
          break;
        }
      }
    }
    if (!met) return false;
  }
  return true;
}

// Dual criterion: P is non-triangular iff for EVERY edge e* of P*,
// st(e*;dP*) minus res(e*;dP*) is disconnected.
template <class Q>
bool dual_triangularity_criterion(const Polytope<Q>& p) {
  Polytope<Q> d = dual_polytope(p);
  std::vector<std::vector<int>> fverts(d.num_facets());
  for (auto& f : d.faces)
    if (f.fdim == d.dim - 1 && f.facet_set.size() == 1)
      fverts[f.facet_set[0]] = f.vertex_set;
  for (auto& e : d.faces) {
    if (e.fdim != 1) continue;
    // Facets containing e* (residue) and facets meeting e* (star).
    std::vector<int> res_facets, star_not_res;
    for (int j = 0; j < d.num_facets(); ++j) {
      if (detail::set_subset(e.vertex_set, fverts[j]))
        res_facets.push_back(j);
      else if (!detail::set_intersect(e.vertex_set, fverts[j]).empty())
        star_not_res.push_back(j);
    }
    // Nodes: star facets not containing e*. Edge sigma~tau iff the face
    // sigma cap tau is not inside any residue facet.
    if (star_not_res.empty()) return false;  // st = res: not disconnected
    detail::UnionFind uf((int)star_not_res.size());
    for (size_t a = 0; a < star_not_res.size(); ++a)
      for (size_t b = a + 1; b < star_not_res.size(); ++b) {
        auto g = detail::set_intersect(fverts[star_not_res[a]],
                                       fverts[star_not_res[b]]);
        if (g.empty()) continue;
        bool inside_res = false;
        for (int j : res_facets)
          if (detail::set_subset(g, fverts[j])) {
            inside_res = true;
            break;
          }
        if (!inside_res) uf.unite((int)a, (int)b);
      }
    std::vector<int> nodes(star_not_res.size());
    for (size_t i = 0; i < nodes.size(); ++i) nodes[i] = (int)i;
    if (uf.components(nodes) < 2) return false;
  }
  return true;
}

// Apply an invertible matrix to a polytope (projective image).
template <class Q>
Polytope<Q> transform_polytope(const Polytope<Q>& p, const Mat<Q>& m) {
  Mat<Q> verts;
  for (auto& v : p.cone.generators) verts.push_back(mat_apply(m, v));
  return polytope_from_vertices(std::move(verts), p.cone.d);
}

}  // namespace sph
