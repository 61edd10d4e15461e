#pragma once
// Scalar backends: exact rationals (GMP) and an epsilon-tolerant double.
// Everything downstream is templated on the scalar type Q.

#include <gmpxx.h>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sph {

using Rat = mpq_class;

// Double wrapper whose sign tests use a tolerance. Used by the float backend
// for fixtures with irrational coordinates (icosahedron, dodecahedron).
struct Approx {
  double v = 0.0;
  static double eps;  // global tolerance, default 1e-9

  Approx() = default;
  Approx(double x) : v(x) {}
  Approx(int x) : v(x) {}

  Approx operator-() const { return Approx(-v); }
  Approx& operator+=(const Approx& o) { v += o.v; return *this; }
  Approx& operator-=(const Approx& o) { v -= o.v; return *this; }
  Approx& operator*=(const Approx& o) { v *= o.v; return *this; }
  Approx& operator/=(const Approx& o) { v /= o.v; return *this; }
  friend Approx operator+(Approx a, const Approx& b) { return a += b; }
  friend Approx operator-(Approx a, const Approx& b) { return a -= b; }
  friend Approx operator*(Approx a, const Approx& b) { return a *= b; }
  friend Approx operator/(Approx a, const Approx& b) { return a /= b; }
};
inline double Approx::eps = 1e-9;

inline int qsgn(const Rat& x) { return sgn(x); }
inline int qsgn(const Approx& x) {
  if (x.v > Approx::eps) return 1;
  if (x.v < -Approx::eps) return -1;
  return 0;
}

inline bool qzero(const Rat& x) { return sgn(x) == 0; }
inline bool qzero(const Approx& x) { return qsgn(x) == 0; }
inline bool qeq(const Rat& a, const Rat& b) { return a == b; }
inline bool qeq(const Approx& a, const Approx& b) { return qsgn(a - b) == 0; }

// Total order for deterministic sorting. Exact for Rat; for Approx a plain
// double compare (only used to order canonicalized data).
inline int qcmp(const Rat& a, const Rat& b) { return cmp(a, b); }
inline int qcmp(const Approx& a, const Approx& b) {
  if (a.v < b.v) return -1;
  if (a.v > b.v) return 1;
  return 0;
}

inline double qdouble(const Rat& x) { return x.get_d(); }
inline double qdouble(const Approx& x) { return x.v; }

// "p/q" or "p" (also accepts plain decimal-free integers with sign).
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rat r(s);
      r.canonicalize();
      return r;
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
    if (sgn(den) < 0) { num = -num; den = -den; }
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

inline std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace sph
