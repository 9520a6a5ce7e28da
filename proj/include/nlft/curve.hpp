#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "potential.hpp"
#include "su11.hpp"

namespace nlft {

/// Point of the unit circle, stored as the angle so |z| = 1 exactly.
struct CirclePoint {
  double theta = 0.0;

  static CirclePoint from_angle(double th) {
    const double two_pi = 2.0 * M_PI;
    double t = std::fmod(th, two_pi);
    if (t < 0.0) t += two_pi;
    return {t};
  }

  Complex z() const { return std::polar(1.0, theta); }

  /// z^n via angle multiplication; no phase drift from repeated products.
  Complex z_pow(int n) const { return std::polar(1.0, static_cast<double>(n) * theta); }
};

/// Equispaced grid theta_j = 2 pi j / Q with quadrature weights 1/Q
/// (normalized Lebesgue measure on the circle).
struct CircleGrid {
  int Q;
  CirclePoint point(int j) const { return {2.0 * M_PI * static_cast<double>(j) / Q}; }
};

inline CircleGrid circle_grid(int Q) {
  if (Q < 1) throw BadInterval("circle_grid requires Q >= 1");
  return {Q};
}

/// Mean of the values with equal weights 1/Q, Kahan-compensated, fixed
/// summation order.
inline double quadrature(const CircleGrid& grid, const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(grid.Q))
    throw LengthMismatch("quadrature: values length does not match grid size");
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / grid.Q;
}

/// T_n(z) = ((1 - |F_n|^2)^{-1/2}, F_n z^n (1 - |F_n|^2)^{-1/2}).
inline GroupElement transfer_matrix(Complex fn, int n, CirclePoint z) {
  const double m = std::abs(fn);
  if (!(m < 1.0)) throw OutOfDisc("transfer_matrix: |F_n| >= 1");
  const double c = 1.0 / std::sqrt((1.0 - m) * (1.0 + m));
  return {Complex(c, 0.0), fn * z.z_pow(n) * c};
}

/// Samples of a curve on the group or the algebra over the integer window
/// [n_- - 1, n_+]; the left base point carries the identity / zero value so
/// one-step sub-curves are always addressable.
template <typename Elem>
struct DiscreteCurve {
  int first = 0;
  std::vector<Elem> samples;

  int lo() const { return first; }
  int hi() const { return first + static_cast<int>(samples.size()) - 1; }
  int length() const { return static_cast<int>(samples.size()); }

  const Elem& at(int N) const {
    if (N < lo() || N > hi()) throw BadInterval("curve index outside the stored window");
    return samples[static_cast<std::size_t>(N - first)];
  }
};

/// Step metric: group curves use d, algebra curves the operator norm of the
/// difference.
inline double curve_metric(const GroupElement& x, const GroupElement& y) {
  return distance(x, y);
}
inline double curve_metric(const AlgebraElement& x, const AlgebraElement& y) {
  return alg_norm(y - x);
}

/// Partial products gamma(N; z) = prod_{n <= N} T_n(z). The curve is
/// constant outside the support window, so the stored window determines
/// every variation over all of Z. An empty potential yields the one-point
/// identity curve.
inline DiscreteCurve<GroupElement> gamma_curve(const Potential& f, CirclePoint z) {
  DiscreteCurve<GroupElement> curve;
  if (f.empty()) {
    curve.samples.push_back(group_identity());
    return curve;
  }
  const int lo = f.min_index();
  const int hi = f.max_index();
  curve.first = lo - 1;
  curve.samples.reserve(static_cast<std::size_t>(hi - lo + 2));
  GroupElement acc;
  curve.samples.push_back(acc);
  auto it = f.entries().begin();
  int mults = 0;
  for (int n = lo; n <= hi; ++n) {
    if (it != f.entries().end() && it->n == n) {
      acc = multiply(acc, transfer_matrix(it->value, n, z));
      ++it;
      if (++mults % 64 == 0) acc = renormalized(acc);
    }
    curve.samples.push_back(acc);
  }
  return curve;
}

/// Partial sums sigma(N; z) of the off-diagonal matrices (0, F_n z^n).
/// Each one-step increment has operator norm |F_n|.
inline DiscreteCurve<AlgebraElement> sigma_curve(const Potential& f, CirclePoint z) {
  DiscreteCurve<AlgebraElement> curve;
  if (f.empty()) {
    curve.samples.push_back(AlgebraElement{});
    return curve;
  }
  const int lo = f.min_index();
  const int hi = f.max_index();
  curve.first = lo - 1;
  curve.samples.reserve(static_cast<std::size_t>(hi - lo + 2));
  AlgebraElement acc;
  curve.samples.push_back(acc);
  auto it = f.entries().begin();
  for (int n = lo; n <= hi; ++n) {
    if (it != f.entries().end() && it->n == n) {
      const Complex w = it->value * z.z_pow(n);
      acc = acc + AlgebraElement{0.0, w.real(), -w.imag()};
      ++it;
    }
    curve.samples.push_back(acc);
  }
  return curve;
}

/// The full transform (a, b)(z): the last sample of the partial-product
/// curve. |a| >= 1 always, since |a|^2 = 1 + |b|^2.
inline GroupElement full_nft(const Potential& f, CirclePoint z) {
  GroupElement acc;
  int mults = 0;
  for (const auto& e : f.entries()) {
    acc = multiply(acc, transfer_matrix(e.value, e.n, z));
    if (++mults % 64 == 0) acc = renormalized(acc);
  }
  return acc;
}

}  // namespace nlft
