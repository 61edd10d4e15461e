#pragma once
// Projective transforms as rational matrices modulo positive scalars.
// Canonical form: integer entries with content 1. The overall sign is
// meaningful (a transform and its negative differ on the sphere), so only
// positive rescaling is normalized away.

#include <stdexcept>
#include <string>

#include "sph/linalg.hpp"

namespace sph {

struct Transform {
  Mat<Rat> m;

  static Transform from_matrix(Mat<Rat> mat) {
    int n = (int)mat.size();
    for (auto& row : mat)
      if ((int)row.size() != n) throw std::invalid_argument("transform not square");
    if (!mat_inverse(mat)) throw std::invalid_argument("transform not invertible");
    Transform t;
    t.m = std::move(mat);
    t.canonicalize();
    return t;
  }

  static Transform identity(int d) { return from_matrix(identity_mat<Rat>(d)); }

  int d() const { return (int)m.size(); }

  void canonicalize() {
    // Flatten, positive-scale to coprime integers, restore.
    Vec<Rat> flat;
    for (auto& row : m)
      for (auto& x : row) flat.push_back(x);
    canon_positive_scale(flat);
    size_t k = 0;
    for (auto& row : m)
      for (auto& x : row) x = flat[k++];
  }

  Transform inverse() const {
    auto inv = mat_inverse(m);
    Transform t;
    t.m = std::move(*inv);
    t.canonicalize();
    return t;
  }

  Vec<Rat> apply(const Vec<Rat>& x) const { return mat_apply(m, x); }

  Vec<Rat> apply_ray(const Vec<Rat>& x) const {
    Vec<Rat> y = mat_apply(m, x);
    canon_positive_scale(y);
    return y;
  }

  bool is_identity() const {
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t j = 0; j < m.size(); ++j)
        if (!qeq(m[i][j], Rat(i == j ? 1 : 0))) return false;
    return true;
  }

  bool operator==(const Transform& o) const {
    if (m.size() != o.m.size()) return false;
    for (size_t i = 0; i < m.size(); ++i)
      if (!vec_eq(m[i], o.m[i])) return false;
    return true;
  }

  std::string key() const { return mat_key(m); }
};

// compose(a, b): apply b first, then a.
inline Transform compose(const Transform& a, const Transform& b) {
  Transform t;
  t.m = mat_mul(a.m, b.m);
  t.canonicalize();
  return t;
}

}  // namespace sph
