#pragma once

// Test-only oracles, independent of the library's computation paths:
// dense 2x2 complex matrices with a closed-form singular value and a
// truncated-series exponential.

#include <cmath>
#include <complex>

#include <nlft/su11.hpp>

namespace oracles {

using nlft::AlgebraElement;
using nlft::Complex;
using nlft::GroupElement;
using nlft::HermitianPair;

struct Mat2 {
  Complex m00, m01, m10, m11;
};

inline Mat2 from_pair(const HermitianPair& p) {
  return {p.a, p.b, std::conj(p.b), std::conj(p.a)};
}
inline Mat2 from_group(const GroupElement& g) { return from_pair(g.pair()); }
inline Mat2 from_algebra(const AlgebraElement& x) { return from_pair(x.pair()); }

inline Mat2 mat_identity() { return {1.0, 0.0, 0.0, 1.0}; }

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
          x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

inline Mat2 add(const Mat2& x, const Mat2& y) {
  return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}

inline Mat2 scale(Complex c, const Mat2& x) {
  return {c * x.m00, c * x.m01, c * x.m10, c * x.m11};
}

inline Complex det(const Mat2& x) { return x.m00 * x.m11 - x.m01 * x.m10; }

inline double frob2(const Mat2& x) {
  return std::norm(x.m00) + std::norm(x.m01) + std::norm(x.m10) + std::norm(x.m11);
}

/// Largest singular value via the closed form for 2x2 matrices:
/// sigma_max^2 = (T + sqrt(T^2 - 4 D)) / 2 with T = ||M||_F^2, D = |det M|^2.
inline double svd_max(const Mat2& x) {
  const double T = frob2(x);
  const double D = std::norm(det(x));
  const double disc = std::max(0.0, T * T - 4.0 * D);
  return std::sqrt(0.5 * (T + std::sqrt(disc)));
}

/// Series exponential sum X^k / k!, run until the term norm drops below
/// 1e-22 (inputs in the tests have norm at most a few units).
inline Mat2 exp_series(const Mat2& x) {
  Mat2 sum = mat_identity();
  Mat2 term = mat_identity();
  for (int k = 1; k <= 60; ++k) {
    term = scale(1.0 / static_cast<double>(k), mul(term, x));
    sum = add(sum, term);
    if (std::sqrt(frob2(term)) < 1e-22) break;
  }
  return sum;
}

inline double max_abs_diff(const Mat2& x, const Mat2& y) {
  double m = std::abs(x.m00 - y.m00);
  m = std::max(m, std::abs(x.m01 - y.m01));
  m = std::max(m, std::abs(x.m10 - y.m10));
  m = std::max(m, std::abs(x.m11 - y.m11));
  return m;
}

}  // namespace oracles
