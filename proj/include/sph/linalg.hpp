#pragma once
// Dense exact linear algebra over the templated scalar: RREF, rank, kernel,
// solving, inversion, and canonical forms for rays/covectors.

#include <algorithm>
#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "sph/scalar.hpp"

namespace sph {

template <class Q>
using Vec = std::vector<Q>;
template <class Q>
using Mat = std::vector<Vec<Q>>;

template <class Q>
Q dot(const Vec<Q>& a, const Vec<Q>& b) {
  assert(a.size() == b.size());
  Q s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class Q>
bool is_zero_vec(const Vec<Q>& a) {
  for (auto& x : a)
    if (qsgn(x) != 0) return false;
  return true;
}

template <class Q>
Vec<Q> vec_sub(Vec<Q> a, const Vec<Q>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class Q>
Vec<Q> vec_add(Vec<Q> a, const Vec<Q>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class Q>
Vec<Q> vec_scale(Vec<Q> a, const Q& c) {
  for (auto& x : a) x *= c;
  return a;
}

template <class Q>
Vec<Q> vec_neg(Vec<Q> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <class Q>
Vec<Q> zero_vec(int d) {
  return Vec<Q>(d, Q(0));
}

// In-place reduced row echelon form; returns pivot column list.
// Zero rows are dropped.
template <class Q>
std::vector<int> rref(Mat<Q>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int cols = (int)m[0].size();
  size_t row = 0;
  for (int col = 0; col < cols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && qsgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Q inv = Q(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || qsgn(m[r][col]) == 0) continue;
      Q f = m[r][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

template <class Q>
int rank_of(Mat<Q> m) {
  return (int)rref(m).size();
}

// Basis of the kernel {x : m x = 0}, from the RREF; canonical given the input.
template <class Q>
Mat<Q> kernel_basis(Mat<Q> m, int cols) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  Mat<Q> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<Q> v = zero_vec<Q>(cols);
    v[free] = Q(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve A x = b; returns one solution or nullopt if inconsistent.
template <class Q>
std::optional<Vec<Q>> solve_linear(Mat<Q> a, Vec<Q> b) {
  int cols = a.empty() ? 0 : (int)a[0].size();
  for (size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = rref(a);
  Vec<Q> x = zero_vec<Q>(cols);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // pivot in augmented column
    x[pivots[r]] = a[r][cols];
  }
  return x;
}

template <class Q>
Mat<Q> mat_mul(const Mat<Q>& a, const Mat<Q>& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat<Q> c(n, zero_vec<Q>((int)m));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (qsgn(a[i][l]) == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

template <class Q>
Vec<Q> mat_apply(const Mat<Q>& a, const Vec<Q>& x) {
  Vec<Q> y;
  y.reserve(a.size());
  for (auto& row : a) y.push_back(dot(row, x));
  return y;
}

template <class Q>
std::optional<Mat<Q>> mat_inverse(const Mat<Q>& a) {
  int n = (int)a.size();
  Mat<Q> aug = a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i].push_back(Q(i == j ? 1 : 0));
  }
  auto pivots = rref(aug);
  if ((int)pivots.size() != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  Mat<Q> inv(n, zero_vec<Q>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <class Q>
Mat<Q> identity_mat(int n) {
  Mat<Q> m(n, zero_vec<Q>(n));
  for (int i = 0; i < n; ++i) m[i][i] = Q(1);
  return m;
}

template <class Q>
Mat<Q> mat_transpose(const Mat<Q>& a) {
  if (a.empty()) return {};
  Mat<Q> t(a[0].size(), zero_vec<Q>((int)a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <class Q>
Q det(Mat<Q> m) {
  int n = (int)m.size();
  Q d(1);
  for (int col = 0, row = 0; col < n && row < n; ++col, ++row) {
    int sel = row;
    while (sel < n && qsgn(m[sel][col]) == 0) ++sel;
    if (sel == n) return Q(0);
    if (sel != row) {
      std::swap(m[row], m[sel]);
      d = -d;
    }
    d *= m[row][col];
    Q inv = Q(1) / m[row][col];
    for (int r = row + 1; r < n; ++r) {
      Q f = m[r][col] * inv;
      if (qsgn(f) == 0) continue;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[row][c];
    }
  }
  return d;
}

// --- Canonical forms -------------------------------------------------------
// Rays and covectors are canonicalized by a positive scale only (direction is
// meaningful): exact entries become coprime integers; floats get unit norm.

inline void canon_positive_scale(Vec<Rat>& v) {
  mpz_class den(1), num(0);
  for (auto& x : v) den = lcm(den, x.get_den());
  for (auto& x : v) x *= Rat(den);
  for (auto& x : v) num = gcd(num, x.get_num());
  if (sgn(num) != 0)
    for (auto& x : v) x /= Rat(num);
}

inline void canon_positive_scale(Vec<Approx>& v) {
  double n2 = 0;
  for (auto& x : v) n2 += x.v * x.v;
  if (n2 <= 0) return;
  double n = std::sqrt(n2);
  for (auto& x : v) x.v /= n;
}

// Sign-insensitive canonical form (for basis vectors / hyperplane normals
// where +-v are the same object): positive scale plus first nonzero positive.
template <class Q>
void canon_up_to_sign(Vec<Q>& v) {
  canon_positive_scale(v);
  for (auto& x : v) {
    int s = qsgn(x);
    if (s < 0) {
      for (auto& y : v) y = -y;
      return;
    }
    if (s > 0) return;
  }
}

template <class Q>
int lex_cmp(const Vec<Q>& a, const Vec<Q>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = qcmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

template <class Q>
bool lex_less(const Vec<Q>& a, const Vec<Q>& b) {
  return lex_cmp(a, b) < 0;
}

template <class Q>
bool vec_eq(const Vec<Q>& a, const Vec<Q>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!qeq(a[i], b[i])) return false;
  return true;
}

template <class Q>
void sort_dedup_vecs(Mat<Q>& m) {
  std::sort(m.begin(), m.end(), lex_less<Q>);
  m.erase(std::unique(m.begin(), m.end(),
                      [](const Vec<Q>& a, const Vec<Q>& b) { return vec_eq(a, b); }),
          m.end());
}

inline std::string vec_key(const Vec<Rat>& v) {
  std::string s;
  for (auto& x : v) {
    s += rat_to_string(x);
    s += ',';
  }
  return s;
}

inline std::string mat_key(const Mat<Rat>& m) {
  std::string s;
  for (auto& row : m) {
    s += vec_key(row);
    s += ';';
  }
  return s;
}

}  // namespace sph
