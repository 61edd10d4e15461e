#pragma once
// Gluing specifications: polytope families with projective facet pairings,
// validation, ridge cycles, the Poincare-type conditions, and the per-facet
// residual-convexity hypothesis.

#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "sph/polytope.hpp"
#include "sph/transform.hpp"

namespace sph {

struct FacetRef {
  int pid = 0;
  int facet = 0;
  auto operator<=>(const FacetRef&) const = default;
};

struct RidgeRef {
  int pid = 0;
  int face = 0;  // face id in the polytope's lattice, of dimension dim-2
  auto operator<=>(const RidgeRef&) const = default;
};

struct Pairing {
  FacetRef from, to;
  Transform phi;
};

struct GluingSpec {
  int d = 0;  // ambient dimension n+1
  std::vector<std::string> names;
  std::vector<Polytope<Rat>> polytopes;
  std::vector<Pairing> pairings;

  const Polytope<Rat>& poly(int pid) const { return polytopes.at(pid); }

  const Pairing* pairing_of(FacetRef f) const {
    for (auto& p : pairings)
      if (p.from == f) return &p;
    return nullptr;
  }

  // Face id of the facet f within its polytope's lattice.
  int facet_face(FacetRef f) const { return poly(f.pid).facet_face_id(f.facet); }
};

inline std::string facet_str(const GluingSpec& s, FacetRef f) {
  std::ostringstream os;
  os << (f.pid < (int)s.names.size() ? s.names[f.pid] : "P" + std::to_string(f.pid))
     << ".facet" << f.facet;
  return os.str();
}

// --- Face transport --------------------------------------------------------

// Canonical ray set of a face.
inline Mat<Rat> face_rays(const Polytope<Rat>& p, int face_id) {
  Mat<Rat> rays;
  for (int i : p.faces.at(face_id).vertex_set) rays.push_back(p.cone.generators[i]);
  return rays;
}

// Find the face of p whose vertex rays equal the given set, if any.
inline std::optional<int> face_with_rays(const Polytope<Rat>& p, Mat<Rat> rays) {
  sort_dedup_vecs(rays);
  for (auto& f : p.faces) {
    if (f.vertex_set.size() != rays.size()) continue;
    Mat<Rat> mine = face_rays(p, f.id);
    sort_dedup_vecs(mine);
    if (mine == rays) return f.id;
  }
  return std::nullopt;
}

// Image of a face under a transform, located in the target polytope.
inline std::optional<int> transport_face(const Polytope<Rat>& src, int face_id,
                                         const Transform& phi,
                                         const Polytope<Rat>& dst) {
  Mat<Rat> img;
  for (auto& r : face_rays(src, face_id)) img.push_back(phi.apply_ray(r));
  return face_with_rays(dst, std::move(img));
}

// --- Validation ------------------------------------------------------------

struct Violation {
  FacetRef at;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

inline ValidationReport validate(const GluingSpec& s) {
  ValidationReport rep;
  auto flag = [&](FacetRef f, std::string msg) {
    rep.violations.push_back({f, std::move(msg)});
  };
  std::set<FacetRef> seen;
  for (auto& pr : s.pairings) {
    if (seen.count(pr.from)) flag(pr.from, "duplicate pairing for facet");
    seen.insert(pr.from);
  }
  for (int pid = 0; pid < (int)s.polytopes.size(); ++pid) {
    if (s.poly(pid).cone.d != s.d) flag({pid, 0}, "polytope dimension mismatch");
    for (int k = 0; k < s.poly(pid).num_facets(); ++k)
      if (!seen.count({pid, k})) flag({pid, k}, "facet has no pairing");
  }
  for (auto& pr : s.pairings) {
    const auto& P = s.poly(pr.from.pid);
    const auto& Pp = s.poly(pr.to.pid);
    if (pr.from == pr.to) {
      flag(pr.from, "orbifold pairing: facet glued to itself");
      continue;
    }
    int sigma = s.facet_face(pr.from);
    auto img = transport_face(P, sigma, pr.phi, Pp);
    int sigma_p = s.facet_face(pr.to);
    if (!img || *img != sigma_p) {
      flag(pr.from, "phi(sigma) != sigma'");
      continue;
    }
    // phi(P) cap P' = sigma' exactly.
    Mat<Rat> img_gens;
    for (auto& g : P.cone.generators) img_gens.push_back(pr.phi.apply_ray(g));
    Cone<Rat> phiP = cone_from_generators(std::move(img_gens), {}, s.d);
    Cone<Rat> meet = intersect(phiP, Pp.cone);
    Cone<Rat> wall = cone_from_generators(face_rays(Pp, sigma_p), {}, s.d);
    if (!meet.equals(wall)) flag(pr.from, "phi(P) and P' overlap beyond sigma'");
    // Reverse pairing is the inverse transform.
    const Pairing* rev = s.pairing_of(pr.to);
    if (!rev || rev->to != pr.from)
      flag(pr.to, "missing or mismatched reverse pairing");
    else if (!(rev->phi == pr.phi.inverse()))
      flag(pr.to, "reverse pairing is not the inverse transform");
  }
  return rep;
}

// --- Ridge cycles ----------------------------------------------------------

struct RidgeCycle {
  RidgeRef seed;
  int first_facet = 0;  // the documented seed choice sigma_1
  int period = 0;
  std::vector<RidgeRef> ridges;       // e_0 .. e_{r-1}
  std::vector<FacetRef> facets;       // sigma_1 .. sigma_r (facet crossed leaving e_i)
  std::vector<Transform> transforms;  // phi_{sigma_1} .. phi_{sigma_r}
  Transform holonomy;                 // phi_{sigma_r} o ... o phi_{sigma_1}
};

inline RidgeCycle trace_ridge_cycle(const GluingSpec& s, RidgeRef seed,
                                    int first_facet) {
  RidgeCycle cyc;
  cyc.seed = seed;
  cyc.first_facet = first_facet;
  cyc.holonomy = Transform::identity(s.d);
  RidgeRef e = seed;
  int facet = first_facet;
  for (int step = 0; step < 100000; ++step) {
    cyc.ridges.push_back(e);
    cyc.facets.push_back({e.pid, facet});
    const Pairing* pr = s.pairing_of({e.pid, facet});
    if (!pr) throw std::runtime_error("ridge walk hit an unpaired facet");
    cyc.transforms.push_back(pr->phi);
    cyc.holonomy = compose(pr->phi, cyc.holonomy);
    const auto& dst = s.poly(pr->to.pid);
    auto img = transport_face(s.poly(e.pid), e.face, pr->phi, dst);
    if (!img) throw std::runtime_error("ridge image is not a face of the target");
    RidgeRef e_next{pr->to.pid, *img};
    const auto& fs = dst.faces[*img].facet_set;
    if (fs.size() != 2) throw std::runtime_error("ridge not in exactly two facets");
    int next_facet = fs[0] == pr->to.facet ? fs[1] : fs[0];
    if (fs[0] != pr->to.facet && fs[1] != pr->to.facet)
      throw std::runtime_error("ridge image not contained in target facet");
    if (e_next == seed && next_facet == first_facet) {
      cyc.period = step + 1;
      return cyc;
    }
    e = e_next;
    facet = next_facet;
  }
  throw std::runtime_error("ridge cycle did not close");
}

inline std::vector<RidgeCycle> ridge_cycles(const GluingSpec& s) {
  std::vector<RidgeCycle> out;
  std::set<RidgeRef> visited;
  for (int pid = 0; pid < (int)s.polytopes.size(); ++pid) {
    const auto& p = s.poly(pid);
    for (auto& f : p.faces) {
      if (f.fdim != p.dim - 2) continue;
      RidgeRef r{pid, f.id};
      if (visited.count(r)) continue;
      int first_facet = std::min(f.facet_set[0], f.facet_set[1]);
      RidgeCycle cyc = trace_ridge_cycle(s, r, first_facet);
      for (auto& e : cyc.ridges) visited.insert(e);
      out.push_back(std::move(cyc));
    }
  }
  return out;
}

// --- Ridge quotient geometry -----------------------------------------------

// Projection matrix (2 x d) onto the quotient of R^d by the span of the
// ridge's vertex rays; exact, depends only on the chosen complement basis.
inline Mat<Rat> ridge_projection(const Mat<Rat>& ridge_rays, int d) {
  Mat<Rat> basis = ridge_rays;
  rref(basis);
  if ((int)basis.size() != d - 2)
    throw std::invalid_argument("ridge span must have codimension 2");
  // Extend with standard basis vectors to a full basis.
  Mat<Rat> full = basis;
  for (int i = 0; i < d && (int)full.size() < d; ++i) {
    Vec<Rat> e = zero_vec<Rat>(d);
    e[i] = Rat(1);
    Mat<Rat> test = full;
    test.push_back(e);
    if (rank_of(test) == (int)test.size()) full.push_back(std::move(e));
  }
  auto inv = mat_inverse(mat_transpose(full));
  Mat<Rat> proj;  // coordinates along the two complement directions
  proj.push_back((*inv)[d - 2]);
  proj.push_back((*inv)[d - 1]);
  return proj;
}

// Image of a cone's generators in the quotient plane.
inline Cone<Rat> project_cone_2d(const Mat<Rat>& proj, const Mat<Rat>& gens) {
  Mat<Rat> img;
  for (auto& g : gens) {
    Vec<Rat> y = mat_apply(proj, g);
    if (!is_zero_vec(y)) img.push_back(std::move(y));
  }
  return cone_from_generators(std::move(img), {}, 2);
}

// --- Poincare conditions ---------------------------------------------------

struct PoincareCycleReport {
  RidgeCycle cycle;
  bool holonomy_identity = false;
  bool link_is_circle = false;
  bool pass() const { return holonomy_identity && link_is_circle; }
};

// Condition (2): the developed 2D link cones around the seed ridge tile the
// quotient plane exactly. With each cone pointed and full-dimensional, the
// tiling is equivalent to: pairwise disjoint interiors and every extreme ray
// shared by exactly two cones.
inline bool link_cones_tile_plane(const std::vector<Cone<Rat>>& cones) {
  if (cones.size() < 3) return false;
  for (auto& c : cones)
    if (!c.pointed() || c.dim() != 2 || c.generators.size() != 2) return false;
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j)
      if (intersect(cones[i], cones[j]).dim() > 1) return false;
  std::map<std::string, int> ray_count;
  for (auto& c : cones)
    for (auto& r : c.generators) ++ray_count[vec_key(r)];
  for (auto& [k, n] : ray_count)
    if (n != 2) return false;
  // Consecutive cones in the walk share a ray (cyclically).
  for (size_t i = 0; i < cones.size(); ++i) {
    const auto& a = cones[i];
    const auto& b = cones[(i + 1) % cones.size()];
    bool share = false;
    for (auto& r : a.generators)
      for (auto& q : b.generators)
        if (vec_eq(r, q)) share = true;
    if (!share) return false;
  }
  return true;
}

// Developed link cones of a cycle, in the frame of the seed polytope.
inline std::vector<Cone<Rat>> developed_link_cones(const GluingSpec& s,
                                                   const RidgeCycle& cyc) {
  Mat<Rat> proj = ridge_projection(face_rays(s.poly(cyc.seed.pid), cyc.seed.face), s.d);
  std::vector<Cone<Rat>> cones;
  Transform g = Transform::identity(s.d);
  for (int i = 0; i < cyc.period; ++i) {
    Mat<Rat> gens;
    for (auto& v : s.poly(cyc.ridges[i].pid).cone.generators)
      gens.push_back(g.apply_ray(v));
    cones.push_back(project_cone_2d(proj, gens));
    g = compose(g, cyc.transforms[i].inverse());
  }
  return cones;
}

inline PoincareCycleReport poincare_check_cycle(const GluingSpec& s,
                                                const RidgeCycle& cyc) {
  PoincareCycleReport rep;
  rep.cycle = cyc;
  rep.holonomy_identity = cyc.holonomy.is_identity();
  rep.link_is_circle = link_cones_tile_plane(developed_link_cones(s, cyc));
  return rep;
}

inline std::vector<PoincareCycleReport> poincare_check(const GluingSpec& s) {
  std::vector<PoincareCycleReport> out;
  for (auto& cyc : ridge_cycles(s)) out.push_back(poincare_check_cycle(s, cyc));
  return out;
}

// --- Residual convexity ----------------------------------------------------

struct FacetConvexityReport {
  FacetRef facet;
  bool convex_ridge_link = false;
  bool convex_direct = false;
  bool agree() const { return convex_ridge_link == convex_direct; }
};

// Decide convexity of phi_sigma(P) cup P' for a single pairing.
inline FacetConvexityReport facet_union_convexity(const GluingSpec& s,
                                                  const Pairing& pr) {
  FacetConvexityReport rep;
  rep.facet = pr.from;
  const auto& P = s.poly(pr.from.pid);
  const auto& Pp = s.poly(pr.to.pid);
  Mat<Rat> img_gens;
  for (auto& g : P.cone.generators) img_gens.push_back(pr.phi.apply_ray(g));
  Polytope<Rat> phiP = polytope_from_vertices(img_gens, s.d);
  int sigma_p = s.facet_face(pr.to);
  Mat<Rat> wall_rays = face_rays(Pp, sigma_p);

  // Direct method: each polytope satisfies the other's non-shared halfspaces.
  auto is_wall = [&](const Vec<Rat>& u) {
    for (auto& r : wall_rays)
      if (qsgn(dot(u, r)) != 0) return false;
    return true;
  };
  bool direct = true;
  for (auto& u : phiP.facets) {
    if (is_wall(u)) continue;
    for (auto& g : Pp.cone.generators)
      if (qsgn(dot(u, g)) > 0) direct = false;
  }
  for (auto& u : Pp.facets) {
    if (is_wall(u)) continue;
    for (auto& g : phiP.cone.generators)
      if (qsgn(dot(u, g)) > 0) direct = false;
  }
  rep.convex_direct = direct;

  // Ridge-link method: at each ridge of the shared facet, the two 2D link
  // cones must fit in a closed halfplane (their hull is not the full plane).
  bool link_ok = true;
  for (auto& e : Pp.faces) {
    if (e.fdim != Pp.dim - 2) continue;
    if (std::find(e.facet_set.begin(), e.facet_set.end(), pr.to.facet) ==
        e.facet_set.end())
      continue;
    Mat<Rat> proj = ridge_projection(face_rays(Pp, e.id), s.d);
    Cone<Rat> c1 = project_cone_2d(proj, Pp.cone.generators);
    Cone<Rat> c2 = project_cone_2d(proj, phiP.cone.generators);
    Cone<Rat> hull = hull_union(c1, c2);
    if ((int)hull.lineality.size() >= 2) link_ok = false;
  }
  rep.convex_ridge_link = link_ok;
  return rep;
}

inline std::vector<FacetConvexityReport> residual_convexity_check(
    const GluingSpec& s) {
  std::vector<FacetConvexityReport> out;
  for (auto& pr : s.pairings) out.push_back(facet_union_convexity(s, pr));
  return out;
}

// --- Hypothesis scans ------------------------------------------------------

struct TriangularCell {
  int pid = 0;
  std::pair<int, int> witness;  // (ridge face id, face id)
};

inline std::vector<TriangularCell> triangular_scan(const GluingSpec& s) {
  std::vector<TriangularCell> out;
  for (int pid = 0; pid < (int)s.polytopes.size(); ++pid) {
    auto [tri, wit] = is_triangular(s.poly(pid));
    if (tri) out.push_back({pid, *wit});
  }
  return out;
}

inline std::vector<std::pair<int, bool>> thickness_scan(const GluingSpec& s) {
  std::vector<std::pair<int, bool>> out;
  for (int pid = 0; pid < (int)s.polytopes.size(); ++pid) {
    bool thick = !is_thin(dual_polytope(s.poly(pid))).first;
    out.push_back({pid, thick});
  }
  return out;
}

}  // namespace sph
