#pragma once

#include <cmath>
#include <complex>

#include "errors.hpp"

namespace nlft {

using Complex = std::complex<double>;

/// Any matrix of the shape [[a, b], [conj(b), conj(a)]], with no determinant
/// constraint. Group elements, algebra elements and their differences all
/// embed here, so they share one operator-norm routine.
struct HermitianPair {
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
};

inline HermitianPair operator+(const HermitianPair& x, const HermitianPair& y) {
  return {x.a + y.a, x.b + y.b};
}
inline HermitianPair operator-(const HermitianPair& x, const HermitianPair& y) {
  return {x.a - y.a, x.b - y.b};
}
inline HermitianPair operator*(const HermitianPair& x, const HermitianPair& y) {
  return {x.a * y.a + x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}
inline HermitianPair pair_identity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

/// Operator norm on C^2 of this matrix class: |a| + |b|. This equals the
/// largest singular value whether or not the determinant is 1.
inline double op_norm(const HermitianPair& m) { return std::abs(m.a) + std::abs(m.b); }

/// Element of SU(1,1), stored as the first row (a, b); |a|^2 - |b|^2 = 1.
struct GroupElement {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  HermitianPair pair() const { return {a, b}; }
};

/// Element of su(1,1): the matrix [[i r, s - i t], [s + i t, -i r]].
struct AlgebraElement {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  HermitianPair pair() const { return {Complex(0.0, r), Complex(s, -t)}; }
};

inline AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  return {x.r + y.r, x.s + y.s, x.t + y.t};
}
inline AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  return {x.r - y.r, x.s - y.s, x.t - y.t};
}
inline AlgebraElement operator*(double c, const AlgebraElement& x) {
  return {c * x.r, c * x.s, c * x.t};
}

inline GroupElement group_identity() { return {}; }

inline GroupElement multiply(const GroupElement& x, const GroupElement& y) {
  return {x.a * y.a + x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}

inline GroupElement inverse(const GroupElement& x) { return {std::conj(x.a), -x.b}; }

inline double determinant_defect(const GroupElement& g) {
  return std::abs(std::norm(g.a) - std::norm(g.b) - 1.0);
}

/// Pulls (a, b) back onto the |a|^2 - |b|^2 = 1 manifold when the drift
/// exceeds 1e-12. Long products apply this every 64 multiplications. When
/// the computed determinant is itself unreliable (far from 1, which only
/// happens outside the operating range of double precision), the element is
/// returned unchanged rather than rescaled by noise.
inline GroupElement renormalized(const GroupElement& g) {
  const double det = std::norm(g.a) - std::norm(g.b);
  if (!(det > 0.25) || !(det < 4.0)) return g;
  if (std::abs(det - 1.0) <= 1e-12) return g;
  const double scale = 1.0 / std::sqrt(det);
  return {g.a * scale, g.b * scale};
}

inline double alg_norm(const AlgebraElement& x) {
  return std::abs(x.r) + std::hypot(x.s, x.t);
}

/// d(X, Y) = log(1 + ||X^{-1} Y - I||_op). Arguments stay in the written
/// order everywhere; symmetry is a tested property, not an assumption.
/// Identical representations are at distance exactly 0: without the
/// short-circuit the determinant defect of the stored element would leak
/// into d(X, X) and pollute flat curve segments.
inline double distance(const GroupElement& x, const GroupElement& y) {
  if (x.a == y.a && x.b == y.b) return 0.0;
  const GroupElement q = multiply(inverse(x), y);
  return std::log1p(std::abs(q.a - 1.0) + std::abs(q.b));
}

namespace detail {

// sinh(sqrt(d))/sqrt(d) and cosh(sqrt(d)) as series in d, for |d| < 1e-8
// where the closed forms would divide 0 by 0. Six terms, far below 1e-16.
inline double sinhc_from_delta(double d) {
  return 1.0 + d * (1.0 / 6.0 + d * (1.0 / 120.0 + d * (1.0 / 5040.0 +
         d * (1.0 / 362880.0 + d * (1.0 / 39916800.0)))));
}
inline double cosh_from_delta(double d) {
  return 1.0 + d * (1.0 / 2.0 + d * (1.0 / 24.0 + d * (1.0 / 720.0 +
         d * (1.0 / 40320.0 + d * (1.0 / 3628800.0)))));
}

}  // namespace detail

/// Closed-form exponential: X^2 = (s^2 + t^2 - r^2) I, so
/// exp(X) = cosh(sqrt(D)) I + sinh(sqrt(D))/sqrt(D) X, with the cos/sin
/// analogue for D < 0 and the series near D = 0. Entire; the image always
/// satisfies the determinant identity.
inline GroupElement exp_alg(const AlgebraElement& x) {
  const double delta = x.s * x.s + x.t * x.t - x.r * x.r;
  double c, sc;
  if (std::abs(delta) < 1e-8) {
    c = detail::cosh_from_delta(delta);
    sc = detail::sinhc_from_delta(delta);
  } else if (delta > 0.0) {
    const double l = std::sqrt(delta);
    c = std::cosh(l);
    sc = std::sinh(l) / l;
  } else {
    const double l = std::sqrt(-delta);
    c = std::cos(l);
    sc = std::sin(l) / l;
  }
  return {Complex(c, sc * x.r), Complex(sc * x.s, -sc * x.t)};
}

/// Principal logarithm on the region Re(a) > -1 and ||G - I||_op < 1.
///
/// With 2 cosh(lambda) = tr(G) = 2 Re(a), the unique principal preimage is
/// X = (lambda / sinh(lambda)) (G - cosh(lambda) I); the scalar factor is
/// real in both the hyperbolic (Re a > 1) and elliptic (Re a < 1) regimes,
/// and tends to 1 as G -> I.
inline AlgebraElement log_group(const GroupElement& g) {
  const double dev = std::abs(g.a - 1.0) + std::abs(g.b);
  if (!(g.a.real() > -1.0) || !(dev < 1.0))
    throw OutOfDomain("log_group: element too far from the identity for the principal branch");
  const double c = g.a.real();
  const double w = c - 1.0;
  double f;
  if (std::abs(w) < 5e-9) {
    // lambda^2 = 2w + O(w^2); lambda/sinh(lambda) = 1 - d/6 + 7 d^2/360.
    const double d = 2.0 * w;
    f = 1.0 - d / 6.0 + 7.0 * d * d / 360.0;
  } else if (c > 1.0) {
    f = std::acosh(c) / std::sqrt((c - 1.0) * (c + 1.0));
  } else {
    f = std::acos(c) / std::sqrt((1.0 - c) * (1.0 + c));
  }
  return {f * g.a.imag(), f * g.b.real(), -f * g.b.imag()};
}

}  // namespace nlft
