#pragma once
// Breadth-first development of the universal cover of a glued complex, with
// certification machinery: stars, residues, polyballs, union convexity, the
// residual-convexity audit, good ridges, directed galleries, supporting
// hyperplanes, and the proper-convexity certificate.

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "sph/complex.hpp"

namespace sph {

// --- Developed complex -----------------------------------------------------

struct DevCell {
  int pid = 0;
  Transform g;
  Cone<Rat> shape;            // g applied to the base polytope's cone
  std::vector<int> nbr;       // per base facet index; -1 while unlinked
  int depth = -1;             // least k with cell in st^k(base); -1 = frontier
  bool overlapped = false;    // branch halted by an overlap event
};

struct OverlapEvent {
  int a = 0, b = 0;  // cell ids with full-dimensional cone intersection
  int depth = 0;     // exploration round that produced the event
};

// A developed face: face id refers to the BASE polytope's lattice of the cell.
using DevFace = std::pair<int, int>;

struct DevelopedComplex {
  std::shared_ptr<const GluingSpec> owned;  // keeps spec alive past temporaries
  const GluingSpec* spec = nullptr;
  int base_cell = 0;
  int depth_explored = 0;
  std::vector<DevCell> cells;
  std::vector<OverlapEvent> overlaps;
  std::map<RidgeRef, int> ridge_period;
  mutable std::map<std::pair<int, int>, int> contact_memo;

  bool injective() const { return overlaps.empty(); }

  const Polytope<Rat>& base(int c) const { return spec->poly(cells[c].pid); }

  bool complete(int c) const {
    for (int n : cells[c].nbr)
      if (n < 0) return false;
    return true;
  }

  Mat<Rat> face_rays_of(DevFace f) const {
    Mat<Rat> out;
    for (auto& r : face_rays(base(f.first), f.second))
      out.push_back(cells[f.first].g.apply_ray(r));
    return out;
  }

  // Dimension of the intersection of two realized cones (memoized; a single
  // separating facet resolves the common far-apart case cheaply).
  int contact_dim(int a, int b) const {
    if (a == b) return spec->d;
    auto key = std::minmax(a, b);
    auto it = contact_memo.find(key);
    if (it != contact_memo.end()) return it->second;
    auto outside = [](const Cone<Rat>& A, const Cone<Rat>& B) {
      for (auto& u : A.halfspaces) {
        bool all = true;
        for (auto& g : B.generators)
          if (qsgn(dot(u, g)) <= 0) {
            all = false;
            break;
          }
        if (all) return true;
      }
      return false;
    };
    const Cone<Rat>& A = cells[a].shape;
    const Cone<Rat>& B = cells[b].shape;
    int dim = (outside(A, B) || outside(B, A)) ? 0 : intersect(A, B).dim();
    contact_memo[key] = dim;
    return dim;
  }

  std::vector<int> st_cells(int k) const {
    std::vector<int> out;
    for (int c = 0; c < (int)cells.size(); ++c)
      if (cells[c].depth >= 0 && cells[c].depth <= k) out.push_back(c);
    return out;
  }
};

// --- Universal-cover exploration -------------------------------------------

namespace detail {

struct RidgeWalkEnd {
  int cell = 0, ridge = 0, open_facet = 0, count = 0;
  bool closed = false;
};

// Walk around a developed ridge through existing links, starting by crossing
// exit_facet. Stops at an unlinked facet or after closing the full cycle.
inline RidgeWalkEnd walk_ridge(const DevelopedComplex& dc, int c, int e,
                               int exit_facet) {
  const GluingSpec& s = *dc.spec;
  int cur = c, ce = e, cf = exit_facet, count = 1;
  for (int step = 0; step < 100000; ++step) {
    int nb = dc.cells[cur].nbr[cf];
    if (nb < 0) return {cur, ce, cf, count, false};
    const Pairing* pr = s.pairing_of({dc.cells[cur].pid, cf});
    auto img = transport_face(s.poly(dc.cells[cur].pid), ce, pr->phi,
                              s.poly(pr->to.pid));
    if (!img) throw std::logic_error("ridge walk: face transport failed");
    if (nb == c && *img == e) return {cur, ce, cf, count, true};
    const auto& fs = s.poly(pr->to.pid).faces[*img].facet_set;
    if (fs.size() != 2) throw std::logic_error("ridge walk: not a ridge");
    cur = nb;
    ce = *img;
    cf = fs[0] == pr->to.facet ? fs[1] : fs[0];
    ++count;
  }
  throw std::logic_error("ridge walk did not terminate");
}

// Close the cycle around the developed ridge (c, e) if every cell of it is
// already present; the final link is forced by the identity holonomy.
// Returns the new link as (cell, facet) when one was added.
inline std::optional<std::pair<int, int>> try_close_ridge(DevelopedComplex& dc,
                                                          int c, int e) {
  const GluingSpec& s = *dc.spec;
  const auto& fs = s.poly(dc.cells[c].pid).faces[e].facet_set;
  RidgeWalkEnd a = walk_ridge(dc, c, e, fs[0]);
  if (a.closed) return std::nullopt;
  RidgeWalkEnd b = walk_ridge(dc, c, e, fs[1]);
  int total = a.count + b.count - 1;
  int period = dc.ridge_period.at({dc.cells[c].pid, e});
  if (total < period) return std::nullopt;
  if (total > period)
    throw std::logic_error("ridge cycle longer than its period (holonomy?)");
  const Pairing* pr = s.pairing_of({dc.cells[a.cell].pid, a.open_facet});
  auto img = transport_face(s.poly(dc.cells[a.cell].pid), a.ridge, pr->phi,
                            s.poly(pr->to.pid));
  Transform expect = compose(dc.cells[a.cell].g, pr->phi.inverse());
  if (pr->to.pid != dc.cells[b.cell].pid || pr->to.facet != b.open_facet ||
      !img || *img != b.ridge || !(expect == dc.cells[b.cell].g))
    throw std::logic_error("ridge closure inconsistent (holonomy violated)");
  dc.cells[a.cell].nbr[a.open_facet] = b.cell;
  dc.cells[b.cell].nbr[b.open_facet] = a.cell;
  return {{a.cell, a.open_facet}};
}

inline void enqueue_ridges(const DevelopedComplex& dc, int c, int facet_idx,
                           std::deque<DevFace>& queue) {
  const auto& p = dc.base(c);
  for (auto& f : p.faces) {
    if (f.fdim != p.dim - 2) continue;
    if (std::find(f.facet_set.begin(), f.facet_set.end(), facet_idx) !=
        f.facet_set.end())
      queue.push_back({c, f.id});
  }
}

inline void close_cascade(DevelopedComplex& dc, std::deque<DevFace> queue) {
  while (!queue.empty()) {
    auto [c, e] = queue.front();
    queue.pop_front();
    if (auto link = try_close_ridge(dc, c, e))
      // A new link may complete further cycles through the ridges it touches.
      enqueue_ridges(dc, link->first, link->second, queue);
  }
}

inline int expand_facet(DevelopedComplex& dc, int c, int f, int round) {
  const GluingSpec& s = *dc.spec;
  const Pairing* pr = s.pairing_of({dc.cells[c].pid, f});
  if (!pr) throw std::logic_error("expand: unpaired facet");
  DevCell cell;
  cell.pid = pr->to.pid;
  cell.g = compose(dc.cells[c].g, pr->phi.inverse());
  Mat<Rat> gens;
  for (auto& v : s.poly(cell.pid).cone.generators)
    gens.push_back(cell.g.apply_ray(v));
  cell.shape = cone_from_generators(std::move(gens), {}, s.d);
  cell.nbr.assign(s.poly(cell.pid).num_facets(), -1);
  int id = (int)dc.cells.size();
  dc.cells.push_back(std::move(cell));
  dc.cells[c].nbr[f] = id;
  dc.cells[id].nbr[pr->to.facet] = c;
  for (int m = 0; m < id; ++m)
    if (dc.contact_dim(id, m) == s.d) {
      dc.overlaps.push_back({m, id, round});
      dc.cells[id].overlapped = true;
    }
  std::deque<DevFace> queue;
  enqueue_ridges(dc, c, f, queue);
  close_cascade(dc, std::move(queue));
  return id;
}

}  // namespace detail

// Explore st^K of the base cell. Cells are identified along closed ridge
// cycles only, so distinct sheets of the universal cover stay distinct and a
// wrap-around shows up as an overlap event between coincident cones.
inline DevelopedComplex develop(const GluingSpec& spec, int base, int K) {
  DevelopedComplex dc;
  dc.owned = std::make_shared<GluingSpec>(spec);
  dc.spec = dc.owned.get();
  for (auto& cyc : ridge_cycles(spec))
    for (auto& r : cyc.ridges) dc.ridge_period[r] = cyc.period;
  DevCell c0;
  c0.pid = base;
  c0.g = Transform::identity(spec.d);
  c0.shape = spec.poly(base).cone;
  c0.nbr.assign(spec.poly(base).num_facets(), -1);
  c0.depth = 0;
  dc.cells.push_back(std::move(c0));
  std::set<int> current = {0};
  // Expand a facet only when it touches the previous star: every cell of
  // st(current) contains a face of current and is reached through facets
  // containing that face, so this creates exactly the star and nothing else.
  auto maybe_touches = [](const Mat<Rat>& rays, const Cone<Rat>& shape) {
    for (auto& u : shape.halfspaces) {
      bool all_out = true;
      for (auto& r : rays)
        if (qsgn(dot(u, r)) <= 0) {
          all_out = false;
          break;
        }
      if (all_out) return false;
    }
    return true;
  };
  auto facet_touches = [&](const std::set<int>& cur, int c, int f) {
    if (cur.count(c)) return true;
    Mat<Rat> rays = dc.face_rays_of({c, spec.poly(dc.cells[c].pid).facet_face_id(f)});
    Cone<Rat> fc = cone_from_generators(rays, {}, spec.d);
    for (int m : cur) {
      if (!maybe_touches(rays, dc.cells[m].shape)) continue;
      if (intersect(fc, dc.cells[m].shape).dim() >= 1) return true;
    }
    return false;
  };
  for (int k = 1; k <= K; ++k) {
    std::set<int> stk = current;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> snapshot(stk.begin(), stk.end());
      for (int c : snapshot) {
        if (dc.cells[c].overlapped) continue;
        for (int f = 0; f < (int)dc.cells[c].nbr.size(); ++f)
          if (dc.cells[c].nbr[f] < 0 && facet_touches(current, c, f)) {
            detail::expand_facet(dc, c, f, k);
            changed = true;
          }
      }
      for (int c = 0; c < (int)dc.cells.size(); ++c) {
        if (stk.count(c)) continue;
        for (int m : current)
          if (dc.contact_dim(c, m) >= 1) {
            stk.insert(c);
            changed = true;
            break;
          }
      }
    }
    for (int c : stk)
      if (dc.cells[c].depth < 0) dc.cells[c].depth = k;
    current = std::move(stk);
    dc.depth_explored = k;
    if (!dc.overlaps.empty()) break;  // verdict known: dev not injective
  }
  return dc;
}

// --- Stars and residues ----------------------------------------------------

struct CellSetResult {
  bool ok = true;  // false: needs deeper development
  std::vector<int> cells;
};

// st(S): cells meeting S. Correct only when every returned cell is complete.
inline CellSetResult star_once(const DevelopedComplex& dc,
                               const std::vector<int>& S) {
  CellSetResult out;
  std::set<int> got(S.begin(), S.end());
  for (int c = 0; c < (int)dc.cells.size(); ++c) {
    if (got.count(c)) continue;
    for (int m : S)
      if (dc.contact_dim(c, m) >= 1) {
        got.insert(c);
        break;
      }
  }
  out.cells.assign(got.begin(), got.end());
  for (int c : out.cells)
    if (!dc.complete(c)) out.ok = false;
  return out;
}

inline CellSetResult star(const DevelopedComplex& dc, std::vector<int> S,
                          int k) {
  CellSetResult out;
  out.cells = std::move(S);
  for (int i = 0; i < k; ++i) {
    CellSetResult next = star_once(dc, out.cells);
    out.cells = std::move(next.cells);
    out.ok = out.ok && next.ok;
  }
  return out;
}

// Orbit of a developed face: all (cell, base face id) states representing the
// same face of the universal cover, found by crossing facet links.
struct FaceOrbit {
  bool ok = true;  // false: some incident facet is unlinked
  std::vector<DevFace> states;
  std::vector<int> cells;
};

inline FaceOrbit face_orbit(const DevelopedComplex& dc, DevFace start,
                            const std::set<int>* restrict_to = nullptr) {
  const GluingSpec& s = *dc.spec;
  FaceOrbit out;
  std::set<DevFace> seen;
  std::deque<DevFace> queue = {start};
  seen.insert(start);
  while (!queue.empty()) {
    auto [c, f] = queue.front();
    queue.pop_front();
    out.states.push_back({c, f});
    for (int j : dc.base(c).faces[f].facet_set) {
      int nb = dc.cells[c].nbr[j];
      if (nb < 0) {
        out.ok = false;
        continue;
      }
      if (restrict_to && !restrict_to->count(nb)) continue;
      const Pairing* pr = s.pairing_of({dc.cells[c].pid, j});
      auto img = transport_face(s.poly(dc.cells[c].pid), f, pr->phi,
                                s.poly(pr->to.pid));
      if (!img) throw std::logic_error("face orbit: transport failed");
      DevFace next{nb, *img};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(out.states.begin(), out.states.end());
  std::set<int> cs;
  for (auto& st : out.states) cs.insert(st.first);
  out.cells.assign(cs.begin(), cs.end());
  return out;
}

inline DevFace face_rep(const FaceOrbit& orbit) { return orbit.states.front(); }

// Residue of a developed face: the cells containing it. For ridges the cells
// are returned in the cyclic order of the walk around the ridge.
struct ResidueResult {
  bool ok = true;
  std::vector<int> cells;
};

inline ResidueResult residue(const DevelopedComplex& dc, DevFace f) {
  const auto& p = dc.base(f.first);
  if (p.faces[f.second].fdim == p.dim - 2) {
    // Cyclic (or open chain) order around the ridge.
    ResidueResult out;
    const auto& fs = p.faces[f.second].facet_set;
    detail::RidgeWalkEnd a = detail::walk_ridge(dc, f.first, f.second, fs[0]);
    std::vector<int> order;
    int cur = f.first, ce = f.second, cf = fs[0];
    order.push_back(cur);
    for (int i = 1; i < a.count; ++i) {
      int nb = dc.cells[cur].nbr[cf];
      const Pairing* pr = dc.spec->pairing_of({dc.cells[cur].pid, cf});
      auto img = transport_face(dc.spec->poly(dc.cells[cur].pid), ce, pr->phi,
                                dc.spec->poly(pr->to.pid));
      const auto& nfs = dc.spec->poly(pr->to.pid).faces[*img].facet_set;
      cur = nb;
      ce = *img;
      cf = nfs[0] == pr->to.facet ? nfs[1] : nfs[0];
      order.push_back(cur);
    }
    if (!a.closed) {
      out.ok = false;
      // Extend backwards through the other facet.
      detail::RidgeWalkEnd b = detail::walk_ridge(dc, f.first, f.second, fs[1]);
      std::vector<int> back;
      cur = f.first;
      ce = f.second;
      cf = fs[1];
      for (int i = 1; i < b.count; ++i) {
        int nb = dc.cells[cur].nbr[cf];
        const Pairing* pr = dc.spec->pairing_of({dc.cells[cur].pid, cf});
        auto img = transport_face(dc.spec->poly(dc.cells[cur].pid), ce, pr->phi,
                                  dc.spec->poly(pr->to.pid));
        const auto& nfs = dc.spec->poly(pr->to.pid).faces[*img].facet_set;
        cur = nb;
        ce = *img;
        cf = nfs[0] == pr->to.facet ? nfs[1] : nfs[0];
        back.push_back(cur);
      }
      std::reverse(back.begin(), back.end());
      back.insert(back.end(), order.begin(), order.end());
      order = std::move(back);
    } else {
      // Closed cycle visits each link once; dedupe repeated terminal cell.
      out.ok = true;
    }
    out.cells = std::move(order);
    return out;
  }
  FaceOrbit orbit = face_orbit(dc, f);
  return {orbit.ok, orbit.cells};
}

// --- Polyballs and union convexity -----------------------------------------

namespace detail {

struct BoundaryData {
  std::vector<std::pair<int, int>> bfacets;  // (cell, base facet idx)
  // Reps of developed boundary faces per spherical dimension, with their
  // S-restricted orbits.
  std::map<DevFace, FaceOrbit> faces;
};

inline bool facet_is_boundary(const DevelopedComplex& dc,
                              const std::set<int>& S, int c, int fidx) {
  int nb = dc.cells[c].nbr[fidx];
  return nb < 0 || !S.count(nb);
}

inline BoundaryData boundary_complex(const DevelopedComplex& dc,
                                     const std::set<int>& S) {
  BoundaryData bd;
  for (int c : S) {
    const auto& p = dc.base(c);
    for (int f = 0; f < p.num_facets(); ++f)
      if (facet_is_boundary(dc, S, c, f)) bd.bfacets.push_back({c, f});
  }
  std::set<DevFace> done;
  for (auto& [c, fidx] : bd.bfacets) {
    const auto& p = dc.base(c);
    for (auto& face : p.faces) {
      if (std::find(face.facet_set.begin(), face.facet_set.end(), fidx) ==
          face.facet_set.end())
        continue;
      DevFace st{c, face.id};
      if (done.count(st)) continue;
      FaceOrbit orbit = face_orbit(dc, st, &S);
      for (auto& s : orbit.states) done.insert(s);
      bd.faces.emplace(face_rep(orbit), std::move(orbit));
    }
  }
  return bd;
}

}  // namespace detail

struct PolyballReport {
  bool injective = true;
  bool connected = true;
  bool boundary_ok = true;  // closed pseudomanifold, connected, sphere Euler
  bool ok() const { return injective && connected && boundary_ok; }
};

inline PolyballReport polyball_check(const DevelopedComplex& dc,
                                     const std::vector<int>& Sv) {
  PolyballReport rep;
  std::set<int> S(Sv.begin(), Sv.end());
  int sdim = dc.base(*S.begin()).dim;
  for (auto a = S.begin(); a != S.end(); ++a)
    for (auto b = std::next(a); b != S.end(); ++b)
      if (dc.contact_dim(*a, *b) == dc.spec->d) rep.injective = false;
  detail::UnionFind uf((int)dc.cells.size());
  for (int c : S)
    for (int n : dc.cells[c].nbr)
      if (n >= 0 && S.count(n)) uf.unite(c, n);
  rep.connected = uf.components(Sv) == 1;
  if (!rep.injective || !rep.connected) return rep;

  detail::BoundaryData bd = detail::boundary_complex(dc, S);
  std::vector<int> count(sdim, 0);
  std::map<DevFace, std::vector<std::pair<int, int>>> ridge_in_bfacets;
  std::set<std::pair<int, int>> bfacet_set(bd.bfacets.begin(), bd.bfacets.end());
  for (auto& [rep_face, orbit] : bd.faces) {
    int fdim = dc.base(rep_face.first).faces[rep_face.second].fdim;
    ++count[fdim];
    if (fdim != sdim - 2) continue;
    for (auto& [c, fid] : orbit.states)
      for (int j : dc.base(c).faces[fid].facet_set)
        if (bfacet_set.count({c, j})) ridge_in_bfacets[rep_face].push_back({c, j});
  }
  int chi = 0;
  for (int k = 0; k < sdim; ++k) chi += (k % 2 == 0 ? count[k] : -count[k]);
  int chi_sphere = 1 + ((sdim - 1) % 2 == 0 ? 1 : -1);
  if (chi != chi_sphere) rep.boundary_ok = false;
  // Each boundary ridge lies in exactly two boundary facets, and the
  // boundary facet graph is connected.
  std::map<std::pair<int, int>, int> bfid;
  for (int i = 0; i < (int)bd.bfacets.size(); ++i) bfid[bd.bfacets[i]] = i;
  detail::UnionFind buf((int)bd.bfacets.size());
  for (auto& [rep_face, incident] : ridge_in_bfacets) {
    if (incident.size() != 2) rep.boundary_ok = false;
    for (size_t i = 1; i < incident.size(); ++i)
      buf.unite(bfid[incident[0]], bfid[incident[i]]);
  }
  std::vector<int> all(bd.bfacets.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
  if (!bd.bfacets.empty() && buf.components(all) != 1) rep.boundary_ok = false;
  return rep;
}

struct UnionConvexityReport {
  bool ridge_link = true;
  bool direct = true;
  bool agree() const { return ridge_link == direct; }
  bool ok() const { return ridge_link && direct; }
};

inline UnionConvexityReport union_convexity(const DevelopedComplex& dc,
                                            const std::vector<int>& Sv) {
  UnionConvexityReport rep;
  std::set<int> S(Sv.begin(), Sv.end());
  int sdim = dc.base(*S.begin()).dim;
  detail::BoundaryData bd = detail::boundary_complex(dc, S);

  // Ridge-link method: around every boundary ridge the union of the 2D link
  // cones of the incident cells of S must fit in a closed halfplane.
  for (auto& [rep_face, orbit] : bd.faces) {
    if (dc.base(rep_face.first).faces[rep_face.second].fdim != sdim - 2)
      continue;
    Mat<Rat> proj = ridge_projection(dc.face_rays_of(rep_face), dc.spec->d);
    Mat<Rat> gens;
    for (int c : orbit.cells)
      for (auto& g : dc.cells[c].shape.generators) gens.push_back(g);
    Cone<Rat> hull = project_cone_2d(proj, gens);
    if ((int)hull.lineality.size() >= 2) rep.ridge_link = false;
  }

  // Direct method: the union equals the hull iff every boundary facet lies
  // inside a facet hyperplane of the hull.
  Mat<Rat> all_gens;
  for (int c : S)
    for (auto& g : dc.cells[c].shape.generators) all_gens.push_back(g);
  sort_dedup_vecs(all_gens);
  Cone<Rat> hull = cone_from_generators(std::move(all_gens), {}, dc.spec->d);
  for (auto& [c, fidx] : bd.bfacets) {
    Mat<Rat> rays =
        dc.face_rays_of({c, dc.base(c).facet_face_id(fidx)});
    bool on_hull = false;
    for (auto& u : hull.halfspaces) {
      bool flat = true;
      for (auto& r : rays)
        if (qsgn(dot(u, r)) != 0) {
          flat = false;
          break;
        }
      if (flat) {
        on_hull = true;
        break;
      }
    }
    if (!on_hull) rep.direct = false;
  }
  return rep;
}

// --- Residual-convexity audit ----------------------------------------------

struct AuditReport {
  int checked_vertices = 0, checked_mid = 0, checked_facets = 0;
  int skipped = 0;  // under-explored residues
  std::vector<DevFace> failures1, failures2, failures3;
  std::vector<std::pair<DevFace, UnionConvexityReport>> disagreements;
  bool cond1() const { return failures1.empty(); }
  bool cond2() const { return failures2.empty(); }
  bool cond3() const { return failures3.empty(); }
  bool all_pass() const { return cond1() && cond2() && cond3(); }
};

inline AuditReport residual_convexity_audit(const DevelopedComplex& dc) {
  AuditReport rep;
  int sdim = dc.spec->d - 1;
  std::set<DevFace> done;
  for (int c = 0; c < (int)dc.cells.size(); ++c) {
    const auto& p = dc.base(c);
    for (auto& f : p.faces) {
      if (f.fdim >= sdim) continue;
      DevFace st{c, f.id};
      if (done.count(st)) continue;
      FaceOrbit orbit = face_orbit(dc, st);
      for (auto& s : orbit.states) done.insert(s);
      if (!orbit.ok) {
        ++rep.skipped;
        continue;
      }
      bool pb = polyball_check(dc, orbit.cells).ok();
      UnionConvexityReport uc = union_convexity(dc, orbit.cells);
      if (!uc.agree()) rep.disagreements.push_back({face_rep(orbit), uc});
      bool convex = pb && uc.ok();
      DevFace r = face_rep(orbit);
      if (f.fdim == 0) {
        ++rep.checked_vertices;
        if (!convex) rep.failures1.push_back(r);
      } else if (f.fdim == sdim - 1) {
        ++rep.checked_facets;
        if (!convex) rep.failures3.push_back(r);
      } else {
        ++rep.checked_mid;
        if (!convex) rep.failures2.push_back(r);
      }
    }
  }
  return rep;
}

// --- Good ridges and strong residual convexity -----------------------------

enum class RidgeVerdict { good, bad, undecided };

struct GoodRidgeReport {
  RidgeVerdict verdict = RidgeVerdict::good;
  std::vector<DevFace> witness;  // failing boundary subcomplex F (reps)
  std::string note;
};

namespace detail {

// Convexity of a union of boundary facet faces: a convex union of
// (n-1)-cells is flat, pointed, and every unshared subridge of a member lies
// in a supporting facet of the hull.
inline bool flat_union_convex(const DevelopedComplex& dc,
                              const std::vector<DevFace>& members,
                              const std::set<int>& S) {
  Mat<Rat> rays;
  for (auto& m : members)
    for (auto& r : dc.face_rays_of(m)) rays.push_back(r);
  sort_dedup_vecs(rays);
  if (rank_of(rays) != dc.spec->d - 1) return false;
  Cone<Rat> hull = cone_from_generators(rays, {}, dc.spec->d);
  if (!hull.pointed()) return false;
  int sdim = dc.spec->d - 1;
  // Count, per developed subridge, how many members contain it.
  std::map<DevFace, int> sub_count;
  std::map<DevFace, Mat<Rat>> sub_rays;
  for (auto& m : members) {
    const auto& p = dc.base(m.first);
    const auto& mf = p.faces[m.second];
    for (auto& h : p.faces) {
      if (h.fdim != sdim - 2) continue;
      if (!set_subset(h.vertex_set, mf.vertex_set)) continue;
      FaceOrbit o = face_orbit(dc, {m.first, h.id}, &S);
      DevFace r = face_rep(o);
      ++sub_count[r];
      if (!sub_rays.count(r)) sub_rays[r] = dc.face_rays_of(r);
    }
  }
  for (auto& [r, n] : sub_count) {
    if (n >= 2) continue;
    bool supported = false;
    for (auto& u : hull.halfspaces) {
      bool flat = true, trivial = true;
      for (auto& ray : sub_rays[r])
        if (qsgn(dot(u, ray)) != 0) flat = false;
      for (auto& g : hull.generators)
        if (qsgn(dot(u, g)) != 0) trivial = false;
      if (flat && !trivial) {
        supported = true;
        break;
      }
    }
    if (!supported) return false;
  }
  return true;
}

}  // namespace detail

inline GoodRidgeReport good_ridge_check(const DevelopedComplex& dc, DevFace e,
                                        int cap = 10000) {
  GoodRidgeReport out;
  FaceOrbit orbit = face_orbit(dc, e);
  if (!orbit.ok) {
    out.verdict = RidgeVerdict::undecided;
    out.note = "needs deeper development";
    return out;
  }
  std::set<int> S(orbit.cells.begin(), orbit.cells.end());
  int sdim = dc.spec->d - 1;
  detail::BoundaryData bd = detail::boundary_complex(dc, S);
  Cone<Rat> e_cone = cone_from_generators(dc.face_rays_of(e), {}, dc.spec->d);
  std::map<DevFace, Cone<Rat>> face_cone;
  auto cone_of = [&](DevFace f) -> const Cone<Rat>& {
    auto it = face_cone.find(f);
    if (it == face_cone.end())
      it = face_cone
               .emplace(f, cone_from_generators(dc.face_rays_of(f), {},
                                                dc.spec->d))
               .first;
    return it->second;
  };
  auto disjoint_from_e = [&](DevFace f) {
    return intersect(cone_of(f), e_cone).dim() == 0;
  };

  // Candidate subcomplexes F: single boundary faces of any dimension, plus
  // connected unions of boundary facet faces grown breadth-first under a
  // convexity filter (complete for n = 2, capped in general).
  std::vector<std::vector<DevFace>> candidates;
  std::vector<DevFace> bfacet_reps;
  for (auto& [rep_face, o] : bd.faces) {
    if (!disjoint_from_e(rep_face)) continue;
    candidates.push_back({rep_face});
    if (dc.base(rep_face.first).faces[rep_face.second].fdim == sdim - 1)
      bfacet_reps.push_back(rep_face);
  }
  // Adjacency: boundary facets sharing a boundary subridge.
  std::map<DevFace, std::vector<DevFace>> adj;
  {
    std::map<DevFace, std::vector<DevFace>> by_sub;
    for (auto& bf : bfacet_reps) {
      const auto& p = dc.base(bf.first);
      const auto& mf = p.faces[bf.second];
      for (auto& h : p.faces) {
        if (h.fdim != sdim - 2) continue;
        if (!detail::set_subset(h.vertex_set, mf.vertex_set)) continue;
        FaceOrbit o = face_orbit(dc, {bf.first, h.id}, &S);
        by_sub[face_rep(o)].push_back(bf);
      }
    }
    for (auto& [sub, fs] : by_sub)
      for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j) {
          adj[fs[i]].push_back(fs[j]);
          adj[fs[j]].push_back(fs[i]);
        }
  }
  std::set<std::vector<DevFace>> seen;
  std::deque<std::vector<DevFace>> grow;
  for (auto& bf : bfacet_reps) {
    grow.push_back({bf});
    seen.insert({bf});
  }
  bool capped = false;
  while (!grow.empty()) {
    std::vector<DevFace> cur = grow.front();
    grow.pop_front();
    for (auto& m : cur)
      for (auto& nb : adj[m]) {
        if (std::find(cur.begin(), cur.end(), nb) != cur.end()) continue;
        if (!disjoint_from_e(nb)) continue;
        std::vector<DevFace> next = cur;
        next.push_back(nb);
        std::sort(next.begin(), next.end());
        if (!seen.insert(next).second) continue;
        if ((int)(candidates.size() + seen.size()) > cap) {
          capped = true;
          break;
        }
        if (!detail::flat_union_convex(dc, next, S)) continue;
        candidates.push_back(next);
        grow.push_back(std::move(next));
      }
    if (capped) break;
  }
  if (capped) {
    out.verdict = RidgeVerdict::undecided;
    out.note = "undecided (cap)";
    return out;
  }

  for (auto& F : candidates) {
    std::vector<int> stF;
    for (int c : orbit.cells) {
      bool meets = false;
      for (auto& m : F)
        if (intersect(dc.cells[c].shape, cone_of(m)).dim() >= 1) {
          meets = true;
          break;
        }
      if (meets) stF.push_back(c);
    }
    if (stF.empty()) continue;
    if (!polyball_check(dc, stF).ok() || !union_convexity(dc, stF).ok()) {
      out.verdict = RidgeVerdict::bad;
      out.witness = F;
      return out;
    }
  }
  return out;
}

struct StrongReport {
  int checked = 0;
  std::vector<DevFace> bad;
  bool undecided = false;
  bool all_good() const { return bad.empty() && !undecided; }
};

inline StrongReport strong_residual_convexity_check(const DevelopedComplex& dc,
                                                    int cap = 10000) {
  StrongReport rep;
  int sdim = dc.spec->d - 1;
  std::set<DevFace> done;
  for (int c = 0; c < (int)dc.cells.size(); ++c) {
    const auto& p = dc.base(c);
    for (auto& f : p.faces) {
      if (f.fdim != sdim - 2) continue;
      DevFace st{c, f.id};
      if (done.count(st)) continue;
      FaceOrbit orbit = face_orbit(dc, st);
      for (auto& s : orbit.states) done.insert(s);
      if (!orbit.ok) continue;
      GoodRidgeReport g = good_ridge_check(dc, face_rep(orbit), cap);
      if (g.verdict == RidgeVerdict::undecided) {
        rep.undecided = true;
        continue;
      }
      ++rep.checked;
      if (g.verdict == RidgeVerdict::bad) rep.bad.push_back(face_rep(orbit));
    }
  }
  return rep;
}

// --- Convexity certification -----------------------------------------------

struct DepthCert {
  int k = 0;
  bool polyball = false, convex = false, antipodal = false;
  bool pass() const { return polyball && convex && antipodal; }
};

struct CertifyReport {
  bool theorem_applicable = false;  // no triangular cells
  bool theorem_certified = false;
  bool overlap = false;
  std::vector<DepthCert> per_depth;
  bool direct_certified = false;
  bool paths_agree = true;
  std::string verdict;
  DevelopedComplex dc;
};

inline CertifyReport certify_convexity(const GluingSpec& spec, int base,
                                       int depth) {
  CertifyReport rep;
  rep.theorem_applicable = triangular_scan(spec).empty();
  bool residually_convex = true;
  for (auto& r : residual_convexity_check(spec))
    if (!r.convex_ridge_link) residually_convex = false;
  rep.theorem_certified = rep.theorem_applicable && residually_convex;

  rep.dc = develop(spec, base, depth);
  if (!rep.dc.injective()) {
    rep.overlap = true;
    rep.direct_certified = false;
    rep.verdict = "developing map not injective at depth " +
                  std::to_string(rep.dc.overlaps.front().depth);
  } else {
    Mat<Rat> neg;
    for (auto& g : rep.dc.cells[0].shape.generators) neg.push_back(vec_neg(g));
    Cone<Rat> anti = cone_from_generators(std::move(neg), {}, spec.d);
    rep.direct_certified = true;
    for (int k = 1; k <= depth; ++k) {
      DepthCert dcert;
      dcert.k = k;
      std::vector<int> S = rep.dc.st_cells(k);
      dcert.polyball = polyball_check(rep.dc, S).ok();
      dcert.convex = union_convexity(rep.dc, S).ok();
      dcert.antipodal = true;
      for (int c : S)
        if (intersect(rep.dc.cells[c].shape, anti).dim() != 0)
          dcert.antipodal = false;
      if (!dcert.pass()) rep.direct_certified = false;
      rep.per_depth.push_back(dcert);
    }
    rep.verdict = rep.direct_certified ? "certified convex" : "not convex";
  }
  if (rep.theorem_applicable)
    rep.paths_agree = (rep.theorem_certified == rep.direct_certified);
  return rep;
}

// --- Directed galleries ----------------------------------------------------

struct Gallery {
  bool ok = false;
  std::string error;
  std::vector<int> cells;                    // P_0 .. P_{K+1}
  std::vector<std::pair<int, int>> facets;   // s_j = (cell P_j, facet idx)
  std::vector<bool> s_disjoint;              // s_j cap s_{j+1} empty
  std::vector<bool> s_on_boundary;           // s_j on the boundary of st^j(Q)
  std::vector<bool> partial_union_convex;    // G_k convex for each k
};

inline Gallery gallery_trace(const DevelopedComplex& dc, int Q, int sigma,
                             int K) {
  Gallery gal;
  for (int pid = 0; pid < (int)dc.spec->polytopes.size(); ++pid)
    if (is_cone_like(dc.spec->poly(pid)).first) {
      gal.error = "cone-like cell: " + dc.spec->names[pid];
      return gal;
    }
  gal.cells.push_back(Q);
  gal.facets.push_back({Q, sigma});
  for (int j = 0; j <= K; ++j) {
    auto [pj, sj] = gal.facets[j];
    int next = dc.cells[pj].nbr[sj];
    if (next < 0) {
      gal.error = "needs deeper development";
      return gal;
    }
    gal.cells.push_back(next);
    if (j == K) break;
    // Entering facet of P_{j+1} and the least facet disjoint from it.
    const Pairing* pr = dc.spec->pairing_of({dc.cells[pj].pid, sj});
    int enter = pr->to.facet;
    const auto& p = dc.base(next);
    std::vector<std::vector<int>> fverts(p.num_facets());
    for (auto& f : p.faces)
      if (f.fdim == p.dim - 1) fverts[f.facet_set[0]] = f.vertex_set;
    int chosen = -1;
    for (int f = 0; f < p.num_facets() && chosen < 0; ++f)
      if (detail::set_intersect(fverts[f], fverts[enter]).empty()) chosen = f;
    if (chosen < 0) {
      gal.error = "no facet disjoint from the incoming facet";
      return gal;
    }
    gal.facets.push_back({next, chosen});
  }
  // Invariants.
  for (size_t j = 0; j + 1 < gal.facets.size(); ++j) {
    Cone<Rat> a = cone_from_generators(
        dc.face_rays_of({gal.facets[j].first,
                         dc.base(gal.facets[j].first)
                             .facet_face_id(gal.facets[j].second)}),
        {}, dc.spec->d);
    Cone<Rat> b = cone_from_generators(
        dc.face_rays_of({gal.facets[j + 1].first,
                         dc.base(gal.facets[j + 1].first)
                             .facet_face_id(gal.facets[j + 1].second)}),
        {}, dc.spec->d);
    gal.s_disjoint.push_back(intersect(a, b).dim() == 0);
  }
  std::vector<int> stj = {Q};
  for (size_t j = 0; j < gal.facets.size(); ++j) {
    std::set<int> in_st(stj.begin(), stj.end());
    bool inside = in_st.count(gal.facets[j].first) > 0;
    bool outside = !in_st.count(gal.cells[j + 1]);
    gal.s_on_boundary.push_back(inside && outside);
    stj = star_once(dc, stj).cells;
  }
  for (size_t k = 0; k < gal.cells.size(); ++k) {
    std::vector<int> G(gal.cells.begin(), gal.cells.begin() + k + 1);
    gal.partial_union_convex.push_back(union_convexity(dc, G).ok());
  }
  gal.ok = true;
  for (bool b : gal.s_disjoint) gal.ok = gal.ok && b;
  for (bool b : gal.s_on_boundary) gal.ok = gal.ok && b;
  for (bool b : gal.partial_union_convex) gal.ok = gal.ok && b;
  return gal;
}

// --- Supporting hyperplanes and the proper-convexity certificate -----------

struct SupportReport {
  std::vector<Vec<Rat>> normals;   // span normal of s_j per j (canonical)
  std::vector<bool> avoids_Q;      // <s_j> cap Q empty, j >= 1
  std::vector<bool> meets_Qsigma;  // <s_j> cap Q(sigma) nonempty, j >= 1
  bool stabilized = false;         // last two spans equal (exact)
  bool restrictions_hold() const {
    for (bool b : avoids_Q)
      if (!b) return false;
    for (bool b : meets_Qsigma)
      if (!b) return false;
    return true;
  }
};

namespace detail {

// Outward normal of a realized facet of a developed cell.
inline Vec<Rat> realized_facet_normal(const DevelopedComplex& dc, int c,
                                      int facet_idx) {
  Mat<Rat> rays = dc.face_rays_of({c, dc.base(c).facet_face_id(facet_idx)});
  Mat<Rat> ker = kernel_basis(rays, dc.spec->d);
  if (ker.size() != 1) throw std::logic_error("facet span is not a hyperplane");
  Vec<Rat> u = ker[0];
  int sgn = 0;
  for (auto& g : dc.cells[c].shape.generators)
    if (int s = qsgn(dot(u, g)); s != 0) sgn = s;
  if (sgn > 0) u = vec_neg(u);
  canon_positive_scale(u);
  return u;
}

inline Cone<Rat> hyperplane_cone(const Vec<Rat>& u, int d) {
  return cone_from_halfspaces(Mat<Rat>{u, vec_neg(u)}, d);
}

}  // namespace detail

inline SupportReport supporting_hyperplane(const DevelopedComplex& dc,
                                           const Gallery& gal) {
  SupportReport rep;
  int d = dc.spec->d;
  int Q = gal.cells[0];
  // Q(sigma): beyond the direction facet, clipped by the other facets of Q.
  Mat<Rat> qs_halfspaces;
  for (int f = 0; f < dc.base(Q).num_facets(); ++f) {
    Vec<Rat> u = detail::realized_facet_normal(dc, Q, f);
    qs_halfspaces.push_back(f == gal.facets[0].second ? vec_neg(u) : u);
  }
  Cone<Rat> Qsigma = cone_from_halfspaces(std::move(qs_halfspaces), d);
  for (size_t j = 0; j < gal.facets.size(); ++j) {
    Mat<Rat> rays = dc.face_rays_of(
        {gal.facets[j].first,
         dc.base(gal.facets[j].first).facet_face_id(gal.facets[j].second)});
    Mat<Rat> ker = kernel_basis(rays, d);
    Vec<Rat> u = ker[0];
    canon_up_to_sign(u);
    rep.normals.push_back(u);
    if (j == 0) continue;
    Cone<Rat> plane = detail::hyperplane_cone(u, d);
    rep.avoids_Q.push_back(
        intersect(plane, dc.cells[Q].shape).dim() == 0);
    rep.meets_Qsigma.push_back(intersect(plane, Qsigma).dim() >= 1);
  }
  size_t n = rep.normals.size();
  rep.stabilized = n >= 2 && vec_eq(rep.normals[n - 1], rep.normals[n - 2]);
  return rep;
}

// General position of hyperplanes through the origin: common intersection is
// trivial iff the normals span the ambient space.
inline bool hyperplanes_general_position(const Mat<Rat>& normals, int d) {
  Mat<Rat> m = normals;
  return rank_of(m) == d;
}

struct SupportCertificate {
  std::vector<Gallery> galleries;       // one per facet of Q
  std::vector<SupportReport> supports;
  bool found = false;
  std::vector<int> chosen;              // facet indices of the simplex subset
  Mat<Rat> simplex;                     // halfspaces u with region u.x <= 0
  bool contains_explored = false;
  std::string message;
};

inline SupportCertificate proper_convexity_certificate(
    const DevelopedComplex& dc, int Q, int K) {
  SupportCertificate cert;
  int d = dc.spec->d;
  int nf = dc.base(Q).num_facets();
  for (int f = 0; f < nf; ++f) {
    Gallery g = gallery_trace(dc, Q, f, K);
    if (!g.error.empty()) {
      cert.message = "gallery failed: " + g.error;
      return cert;
    }
    cert.supports.push_back(supporting_hyperplane(dc, g));
    cert.galleries.push_back(std::move(g));
  }
  for (auto& s : cert.supports)
    if (!s.stabilized) {
      cert.message = "no certificate at depth " + std::to_string(K);
      return cert;
    }
  // Orient each estimate against Q and search d-subsets in general position.
  Mat<Rat> oriented;
  for (auto& s : cert.supports) {
    Vec<Rat> u = s.normals.back();
    int sgn = 0;
    for (auto& g : dc.cells[Q].shape.generators)
      if (int sg = qsgn(dot(u, g)); sg != 0) sgn = sg;
    if (sgn > 0) u = vec_neg(u);
    oriented.push_back(u);
  }
  std::vector<int> comb(d);
  std::function<bool(int, int)> rec = [&](int start, int k) {
    if (k == d) {
      Mat<Rat> sel;
      for (int i : comb) sel.push_back(oriented[i]);
      if (!hyperplanes_general_position(sel, d)) return false;
      cert.chosen = comb;
      cert.simplex = sel;
      return true;
    }
    for (int i = start; i < nf; ++i) {
      comb[k] = i;
      if (rec(i + 1, k + 1)) return true;
    }
    return false;
  };
  if (!rec(0, 0)) {
    cert.message = "no certificate at depth " + std::to_string(K) +
                   " (estimates not in general position)";
    return cert;
  }
  cert.found = true;
  cert.contains_explored = true;
  for (auto& cell : dc.cells) {
    if (cell.depth < 0) continue;
    for (auto& u : cert.simplex)
      for (auto& g : cell.shape.generators)
        if (qsgn(dot(u, g)) > 0) cert.contains_explored = false;
  }
  return cert;
}

}  // namespace sph
