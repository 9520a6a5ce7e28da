#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "su11.hpp"

namespace nlft {

/// Finitely supported sequence n -> F_n with values in the open unit disc.
/// Entries are kept sorted by index; unlisted indices mean F_n = 0.
class Potential {
public:
  struct Entry {
    int n;
    Complex value;
  };

  Potential() = default;

  explicit Potential(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& x, const Entry& y) { return x.n < y.n; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i > 0 && entries_[i].n == entries_[i - 1].n)
        throw ParseError("duplicate potential index " + std::to_string(entries_[i].n));
      if (!(std::abs(entries_[i].value) < 1.0))
        throw OutOfDisc("potential value at n=" + std::to_string(entries_[i].n) +
                        " lies outside the open unit disc");
    }
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  int min_index() const { return entries_.front().n; }
  int max_index() const { return entries_.back().n; }

  /// F_n, zero for unlisted indices.
  Complex value_at(int n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, int k) { return e.n < k; });
    if (it != entries_.end() && it->n == n) return it->value;
    return {0.0, 0.0};
  }

private:
  std::vector<Entry> entries_;
};

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// (sum |F_n|^p)^(1/p); max for p = infinity.
inline double lp_norm(const Potential& f, double p) {
  if (!(p >= 1.0)) throw BadExponent("lp_norm requires p >= 1");
  if (p == kInfExponent) {
    double m = 0.0;
    for (const auto& e : f.entries()) m = std::max(m, std::abs(e.value));
    return m;
  }
  double sum = 0.0;
  for (const auto& e : f.entries()) sum += std::pow(std::abs(e.value), p);
  return std::pow(sum, 1.0 / p);
}

/// ell^p norm of the sequence log((1 + |F_n|) / (1 - |F_n|)).
inline double log_weight_norm(const Potential& f, double p) {
  if (!(p >= 1.0)) throw BadExponent("log_weight_norm requires p >= 1");
  if (p == kInfExponent) {
    double m = 0.0;
    for (const auto& e : f.entries()) {
      const double x = std::abs(e.value);
      m = std::max(m, std::log((1.0 + x) / (1.0 - x)));
    }
    return m;
  }
  double sum = 0.0;
  for (const auto& e : f.entries()) {
    const double x = std::abs(e.value);
    sum += std::pow(std::log((1.0 + x) / (1.0 - x)), p);
  }
  return std::pow(sum, 1.0 / p);
}

/// ell^p norm of sqrt(|log(1 - |F_n|^2)|).
inline double sqrt_log_norm(const Potential& f, double p) {
  if (!(p >= 1.0)) throw BadExponent("sqrt_log_norm requires p >= 1");
  double sum = 0.0;
  for (const auto& e : f.entries()) {
    const double x = std::abs(e.value);
    sum += std::pow(std::sqrt(std::abs(std::log1p(-x * x))), p);
  }
  return std::pow(sum, 1.0 / p);
}

enum class DiscLaw {
  uniform_disc,     // uniform w.r.t. area: modulus = radius * sqrt(u)
  uniform_modulus,  // modulus uniform on [0, radius]
};

/// Deterministic in (seed, parameters). Each index draws from its own
/// counter stream, so enlarging the support keeps shared indices identical.
inline Potential random_potential(std::uint64_t seed, int lo, int hi, double radius,
                                  DiscLaw law = DiscLaw::uniform_disc) {
  if (!(radius > 0.0) || !(radius < 1.0)) throw BadRadius("radius must lie in (0, 1)");
  if (lo > hi) throw BadInterval("empty support interval");
  std::vector<Potential::Entry> entries;
  entries.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int n = lo; n <= hi; ++n) {
    CounterRng rng(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(n)), 0x706F74ull);
    const double u = rng.uniform();
    const double phase = rng.uniform() * 2.0 * M_PI;
    const double mod = law == DiscLaw::uniform_disc ? radius * std::sqrt(u) : radius * u;
    entries.push_back({n, std::polar(mod, phase)});
  }
  return Potential(std::move(entries));
}

/// F_n = 1/2 on |n| <= M. M = 0 yields the single entry F_0 = 1/2.
inline Potential dirichlet_potential(int M) {
  if (M < 0) throw BadInterval("dirichlet_potential requires M >= 0");
  std::vector<Potential::Entry> entries;
  entries.reserve(static_cast<std::size_t>(2 * M + 1));
  for (int n = -M; n <= M; ++n) entries.push_back({n, Complex(0.5, 0.0)});
  return Potential(std::move(entries));
}

/// Trapezoidal family: 2 F_n = 1 for |n| <= M+1, (2M+2-|n|)/(M+1) for
/// M+1 <= |n| <= 2M+2, 0 beyond. Exact zeros at |n| = 2M+2 are omitted.
inline Potential vallee_poussin_potential(int M) {
  if (M < 1) throw BadInterval("vallee_poussin_potential requires M >= 1");
  std::vector<Potential::Entry> entries;
  entries.reserve(static_cast<std::size_t>(4 * M + 3));
  for (int n = -(2 * M + 1); n <= 2 * M + 1; ++n) {
    const int an = std::abs(n);
    const double v = an <= M + 1
                         ? 0.5
                         : static_cast<double>(2 * M + 2 - an) / (2.0 * (M + 1));
    entries.push_back({n, Complex(v, 0.0)});
  }
  return Potential(std::move(entries));
}

}  // namespace nlft
