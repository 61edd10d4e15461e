#pragma once
// Polyhedral cones over an exact (or epsilon-double) scalar with synchronized
// halfspace and generator descriptions, computed by the double description
// method with incremental halfspace insertion.

#include <cstdint>
#include <stdexcept>

#include "sph/linalg.hpp"

namespace sph {

// --- Subspaces -------------------------------------------------------------

template <class Q>
struct Subspace {
  int d = 0;
  Mat<Q> basis;  // canonical (RREF rows)

  static Subspace from_vectors(Mat<Q> vecs, int d) {
    rref(vecs);
    return Subspace{d, std::move(vecs)};
  }

  int dim() const { return (int)basis.size(); }

  Subspace orthogonal_complement() const {
    return from_vectors(kernel_basis(basis, d), d);
  }

  bool contains(const Vec<Q>& x) const {
    Mat<Q> m = basis;
    m.push_back(x);
    return rank_of(m) == (int)basis.size();
  }
};

// Orthogonal projection of x onto the row span of B.
template <class Q>
Vec<Q> project_onto_span(const Mat<Q>& B, const Vec<Q>& x) {
  if (B.empty()) return zero_vec<Q>((int)x.size());
  Mat<Q> gram = mat_mul(B, mat_transpose(B));
  auto y = solve_linear(gram, mat_apply(B, x));
  // B has linearly independent rows, so the Gram matrix is invertible.
  return mat_apply(mat_transpose(B), *y);
}

template <class Q>
Vec<Q> project_subspace(const Subspace<Q>& s, const Vec<Q>& x) {
  return project_onto_span(s.basis, x);
}

// --- Double description core ----------------------------------------------

namespace detail {

using Bits = std::vector<uint64_t>;

inline void bits_set(Bits& b, int i) {
  size_t w = i / 64;
  if (b.size() <= w) b.resize(w + 1, 0);
  b[w] |= uint64_t(1) << (i % 64);
}

inline bool bits_subset(const Bits& a, const Bits& b) {
  // a subset of b
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t bw = i < b.size() ? b[i] : 0;
    if (a[i] & ~bw) return false;
  }
  return true;
}

inline Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(std::min(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

template <class Q>
struct DDState {
  int d;
  Mat<Q> lin;  // current lineality basis
  struct Ray {
    Vec<Q> v;
    Bits active;  // processed halfspaces tight on this ray
  };
  std::vector<Ray> rays;
  int processed = 0;

  explicit DDState(int dim) : d(dim) {
    for (int i = 0; i < dim; ++i) {
      Vec<Q> e = zero_vec<Q>(dim);
      e[i] = Q(1);
      lin.push_back(std::move(e));
    }
  }

  void insert(const Vec<Q>& u) {
    int idx = processed++;
    // Case 1: lineality not contained in ker(u).
    int i0 = -1;
    for (size_t i = 0; i < lin.size(); ++i) {
      if (qsgn(dot(u, lin[i])) != 0) {
        i0 = (int)i;
        break;
      }
    }
    if (i0 >= 0) {
      Vec<Q> b0 = lin[i0];
      Q v0 = dot(u, b0);
      if (qsgn(v0) > 0) {
        b0 = vec_neg(b0);
        v0 = -v0;
      }
      lin.erase(lin.begin() + i0);
      for (auto& b : lin) {
        Q vb = dot(u, b);
        if (qsgn(vb) != 0) b = vec_sub(b, vec_scale(b0, Q(vb / v0)));
      }
      for (auto& r : rays) {
        Q vr = dot(u, r.v);
        if (qsgn(vr) != 0) {
          r.v = vec_sub(r.v, vec_scale(b0, Q(vr / v0)));
          canon_positive_scale(r.v);
        }
        bits_set(r.active, idx);  // all rays are now tight on u
      }
      Ray nr;
      nr.v = b0;
      canon_positive_scale(nr.v);
      for (int j = 0; j < idx; ++j) bits_set(nr.active, j);
      rays.push_back(std::move(nr));
      return;
    }
    // Case 2: classic pointed-quotient step.
    std::vector<int> sgns(rays.size());
    std::vector<Q> vals;
    vals.reserve(rays.size());
    bool has_pos = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      vals.push_back(dot(u, rays[i].v));
      sgns[i] = qsgn(vals[i]);
      if (sgns[i] > 0) has_pos = true;
      if (sgns[i] == 0) bits_set(rays[i].active, idx);
    }
    if (!has_pos) return;
    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (sgns[i] <= 0) next.push_back(rays[i]);
    for (size_t p = 0; p < rays.size(); ++p) {
      if (sgns[p] <= 0) continue;
      for (size_t n = 0; n < rays.size(); ++n) {
        if (sgns[n] >= 0) continue;
        if (!adjacent((int)p, (int)n)) continue;
        Ray w;
        w.v = vec_sub(vec_scale(rays[n].v, vals[p]), vec_scale(rays[p].v, vals[n]));
        canon_positive_scale(w.v);
        if (is_zero_vec(w.v)) continue;
        w.active = bits_and(rays[p].active, rays[n].active);
        bits_set(w.active, idx);
        next.push_back(std::move(w));
      }
    }
    rays = std::move(next);
  }

  bool adjacent(int p, int n) const {
    Bits mask = bits_and(rays[p].active, rays[n].active);
    for (size_t r = 0; r < rays.size(); ++r) {
      if ((int)r == p || (int)r == n) continue;
      if (bits_subset(mask, rays[r].active)) return false;
    }
    return true;
  }
};

}  // namespace detail

// V-description of {x : u x <= 0 for all u}: canonical lineality basis plus
// canonical extreme rays of the line-free part (orthogonal to the lineality).
template <class Q>
struct VRep {
  Mat<Q> lineality;
  Mat<Q> rays;
};

template <class Q>
VRep<Q> dd_pair(const Mat<Q>& covectors, int d) {
  detail::DDState<Q> st(d);
  for (auto& u : covectors)
    if (!is_zero_vec(u)) st.insert(u);
  VRep<Q> out;
  out.lineality = kernel_basis(covectors, d);
  for (auto& r : st.rays) {
    Vec<Q> v = r.v;
    if (!out.lineality.empty())
      v = vec_sub(v, project_onto_span(out.lineality, v));
    canon_positive_scale(v);
    if (!is_zero_vec(v)) out.rays.push_back(std::move(v));
  }
  sort_dedup_vecs(out.rays);
  return out;
}

// --- RationalCone -----------------------------------------------------------

template <class Q>
struct Cone {
  int d = 0;            // ambient dimension (n + 1)
  Mat<Q> halfspaces;    // irredundant, canonical, sorted; non-full-dimensional
                        // cones carry +-u pairs for their span equations
  Mat<Q> generators;    // extreme rays of the line-free part, canonical, sorted
  Mat<Q> lineality;     // canonical basis of l(C)

  int dim() const { return (int)lineality.size() + rank_of(generators); }
  bool pointed() const { return lineality.empty(); }
  bool full_dim() const { return dim() == d; }
  bool is_zero() const { return lineality.empty() && generators.empty(); }

  bool contains(const Vec<Q>& x) const {
    check_dim((int)x.size());
    for (auto& u : halfspaces)
      if (qsgn(dot(u, x)) > 0) return false;
    return true;
  }

  bool contains_cone(const Cone& o) const {
    check_dim(o.d);
    for (auto& g : o.generators)
      if (!contains(g)) return false;
    for (auto& b : o.lineality)
      if (!contains(b) || !contains(vec_neg(b))) return false;
    return true;
  }

  bool equals(const Cone& o) const { return contains_cone(o) && o.contains_cone(*this); }

  // Point in the relative interior (sum of extreme rays; 0 for a subspace).
  Vec<Q> relint_point() const {
    Vec<Q> p = zero_vec<Q>(d);
    for (auto& g : generators) p = vec_add(p, g);
    return p;
  }

  Subspace<Q> span() const {
    Mat<Q> m = generators;
    for (auto& b : lineality) m.push_back(b);
    return Subspace<Q>::from_vectors(std::move(m), d);
  }

  void check_dim(int od) const {
    if (od != d) throw std::invalid_argument("ambient dimension mismatch");
  }
};

namespace detail {

// Canonical H-description from a V-description (dual double description):
// extreme rays of the polar (projected) plus +- pairs spanning its lineality.
template <class Q>
Mat<Q> h_from_v(const Mat<Q>& rays, const Mat<Q>& lineality, int d) {
  Mat<Q> cov = rays;
  for (auto& b : lineality) {
    cov.push_back(b);
    cov.push_back(vec_neg(b));
  }
  VRep<Q> polar = dd_pair(cov, d);
  Mat<Q> hs = polar.rays;
  for (auto b : polar.lineality) {
    canon_up_to_sign(b);
    hs.push_back(b);
    hs.push_back(vec_neg(b));
  }
  sort_dedup_vecs(hs);
  return hs;
}

}  // namespace detail

template <class Q>
Cone<Q> cone_from_halfspaces(Mat<Q> hs, int d) {
  if (d < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  for (auto& u : hs) {
    if ((int)u.size() != d) throw std::invalid_argument("covector dimension mismatch");
    canon_positive_scale(u);
  }
  VRep<Q> v = dd_pair(hs, d);
  Cone<Q> c;
  c.d = d;
  c.generators = std::move(v.rays);
  c.lineality = std::move(v.lineality);
  c.halfspaces = detail::h_from_v(c.generators, c.lineality, d);
  return c;
}

template <class Q>
Cone<Q> cone_from_generators(Mat<Q> rays, Mat<Q> lineality, int d) {
  if (d < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  for (auto& r : rays) {
    if ((int)r.size() != d) throw std::invalid_argument("ray dimension mismatch");
    canon_positive_scale(r);
  }
  Mat<Q> hs = detail::h_from_v(rays, lineality, d);
  // Roundtrip through the H-description for canonical extreme rays.
  return cone_from_halfspaces(std::move(hs), d);
}

template <class Q>
Cone<Q> full_cone(int d) {
  return cone_from_halfspaces<Q>({}, d);
}

template <class Q>
Cone<Q> dual_cone(const Cone<Q>& c) {
  // C* = {u : u(x) <= 0 on C}; generated by the halfspace covectors of C.
  return cone_from_generators<Q>(c.halfspaces, {}, c.d);
}

template <class Q>
Cone<Q> intersect(const Cone<Q>& a, const Cone<Q>& b) {
  a.check_dim(b.d);
  Mat<Q> hs = a.halfspaces;
  for (auto& u : b.halfspaces) hs.push_back(u);
  return cone_from_halfspaces(std::move(hs), a.d);
}

template <class Q>
Cone<Q> hull_union(const Cone<Q>& a, const Cone<Q>& b) {
  a.check_dim(b.d);
  Mat<Q> rays = a.generators;
  for (auto& g : b.generators) rays.push_back(g);
  Mat<Q> lin = a.lineality;
  for (auto& l : b.lineality) lin.push_back(l);
  return cone_from_generators(std::move(rays), std::move(lin), a.d);
}

template <class Q>
std::pair<Subspace<Q>, Cone<Q>> lineality_decomposition(const Cone<Q>& c) {
  Subspace<Q> linear_part{c.d, c.lineality};
  // Generators are already orthogonal to l(C), so the line-free part is
  // simply the cone they generate.
  Cone<Q> linefree = cone_from_generators<Q>(c.generators, {}, c.d);
  return {linear_part, linefree};
}

}  // namespace sph
