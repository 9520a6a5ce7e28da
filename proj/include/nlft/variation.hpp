#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"

namespace nlft {

enum class EndpointMode { free, pinned };

struct VariationQuery {
  double r = 1.0;
  std::optional<std::pair<int, int>> interval;  // curve indices, inclusive
  EndpointMode mode = EndpointMode::free;
};

struct VariationResult {
  double value = 0.0;
  std::vector<int> partition;  // strictly increasing curve indices attaining the supremum
};

/// Pairwise step distances of a curve, d(i, j) for i < j in the stored
/// order (smaller index first). Built once per curve so several exponents
/// can be evaluated against the same distances.
class DistanceTable {
public:
  template <typename Elem>
  explicit DistanceTable(const DiscreteCurve<Elem>& curve)
      : first_(curve.lo()), count_(curve.length()) {
    d_.resize(static_cast<std::size_t>(count_) * (count_ - 1) / 2);
    std::size_t k = 0;
    for (int i = 0; i < count_; ++i)
      for (int j = i + 1; j < count_; ++j)
        d_[k++] = curve_metric(curve.samples[static_cast<std::size_t>(i)],
                               curve.samples[static_cast<std::size_t>(j)]);
  }

  int first() const { return first_; }
  int count() const { return count_; }

  double dist(int i, int j) const { return d_[index(i, j)]; }

private:
  // strict upper triangle, row-major
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (2 * count_ - i - 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
  }

  int first_;
  int count_;
  std::vector<double> d_;
};

namespace detail {

struct ResolvedRange {
  int ia, ib;  // relative sample indices, inclusive
};

inline ResolvedRange resolve_range(const DistanceTable& table, const VariationQuery& q) {
  if (!(q.r >= 1.0)) throw BadExponent("variation requires r >= 1");
  if (q.mode == EndpointMode::pinned && !q.interval)
    throw BadInterval("pinned variation requires an explicit interval");
  int ia = 0, ib = table.count() - 1;
  if (q.interval) {
    const auto [a, b] = *q.interval;
    if (a > b) throw BadInterval("variation interval is empty");
    if (a < table.first() || b > table.first() + table.count() - 1)
      throw BadInterval("variation interval outside the curve window");
    ia = a - table.first();
    ib = b - table.first();
  }
  return {ia, ib};
}

// Max-step variation. Any partition's largest step is a pair distance, so
// the supremum over partitions is the maximum over ordered pairs; the
// reported partition is the smallest such pair (plus pinned endpoints).
inline VariationResult variation_sup(const DistanceTable& t, const ResolvedRange& rr,
                                     bool pinned) {
  double best = 0.0;
  int bi = -1, bj = -1;
  for (int i = rr.ia; i <= rr.ib; ++i)
    for (int j = i + 1; j <= rr.ib; ++j)
      if (t.dist(i, j) > best) {
        best = t.dist(i, j);
        bi = i;
        bj = j;
      }
  VariationResult res;
  res.value = best;
  if (pinned) {
    res.partition.push_back(t.first() + rr.ia);
    if (bi > rr.ia && best > 0.0) res.partition.push_back(t.first() + bi);
    if (bj > rr.ia && bj < rr.ib && best > 0.0) res.partition.push_back(t.first() + bj);
    if (rr.ib > rr.ia) res.partition.push_back(t.first() + rr.ib);
  } else if (best > 0.0) {
    res.partition = {t.first() + bi, t.first() + bj};
  }
  return res;
}

}  // namespace detail

/// Exact r-variation by dynamic programming over the stored window.
///
/// Free mode: best[i] = max(0, max_{j>i} d(i,j)^r + best[j]), answer
/// max_i best[i], then the 1/r power. Pinned mode fixes the first and last
/// partition points to the interval endpoints. Chain values accumulate
/// right-to-left, and ties resolve to the smallest index at every choice,
/// so the reported partition is the lexicographically smallest maximizer
/// and the exhaustive oracle reproduces both value and partition exactly.
inline VariationResult variation(const DistanceTable& table, const VariationQuery& q) {
  const auto rr = detail::resolve_range(table, q);
  const bool pinned = q.mode == EndpointMode::pinned;
  if (q.r == kInfExponent) return detail::variation_sup(table, rr, pinned);

  const int n = rr.ib - rr.ia + 1;
  VariationResult res;
  if (n <= 1) {
    if (pinned) res.partition.push_back(table.first() + rr.ia);
    return res;
  }

  std::vector<double> best(static_cast<std::size_t>(n), 0.0);
  std::vector<int> choice(static_cast<std::size_t>(n), -1);
  for (int i = n - 2; i >= 0; --i) {
    double b = pinned ? -1.0 : 0.0;
    int c = -1;
    const int jmax = n - 1;
    for (int j = i + 1; j <= jmax; ++j) {
      const double cand =
          std::pow(table.dist(rr.ia + i, rr.ia + j), q.r) + best[static_cast<std::size_t>(j)];
      if (cand > b) {
        b = cand;
        c = j;
      }
    }
    best[static_cast<std::size_t>(i)] = b;
    choice[static_cast<std::size_t>(i)] = c;
  }

  int start = 0;
  double total = 0.0;
  if (pinned) {
    start = 0;
    total = best[0];
  } else {
    total = 0.0;
    for (int i = 0; i < n; ++i)
      if (best[static_cast<std::size_t>(i)] > total) {
        total = best[static_cast<std::size_t>(i)];
        start = i;
      }
  }

  res.value = total > 0.0 ? std::pow(total, 1.0 / q.r) : 0.0;
  if (pinned || total > 0.0) {
    int i = start;
    res.partition.push_back(table.first() + rr.ia + i);
    while (choice[static_cast<std::size_t>(i)] != -1) {
      i = choice[static_cast<std::size_t>(i)];
      res.partition.push_back(table.first() + rr.ia + i);
    }
  }
  return res;
}

template <typename Elem>
VariationResult variation(const DiscreteCurve<Elem>& curve, const VariationQuery& q) {
  return variation(DistanceTable(curve), q);
}

/// Recomputes a partition's chain value against a distance table (the
/// result invariant: this reproduces VariationResult::value to 1e-12).
inline double partition_value(const DistanceTable& table, const std::vector<int>& partition,
                              double r) {
  if (partition.size() < 2) return 0.0;
  if (r == kInfExponent) {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < partition.size(); ++k)
      m = std::max(m, table.dist(partition[k] - table.first(), partition[k + 1] - table.first()));
    return m;
  }
  double acc = 0.0;
  for (std::size_t k = partition.size() - 1; k-- > 0;)
    acc += std::pow(table.dist(partition[k] - table.first(), partition[k + 1] - table.first()), r);
  return acc > 0.0 ? std::pow(acc, 1.0 / r) : 0.0;
}

/// Exhaustive oracle: enumerates every strictly increasing index sequence
/// (window length <= 14). Chain values accumulate right-to-left exactly as
/// in the dynamic program, so agreement is exact, not approximate. For
/// finite r ties resolve to the lexicographically smallest chain; for
/// r = infinity only the value is canonical.
template <typename Elem>
VariationResult brute_force_variation(const DiscreteCurve<Elem>& curve,
                                      const VariationQuery& q) {
  const DistanceTable table(curve);
  const auto rr = detail::resolve_range(table, q);
  const bool pinned = q.mode == EndpointMode::pinned;
  const int n = rr.ib - rr.ia + 1;
  if (n > 14) throw TooLarge("brute_force_variation window exceeds 14 samples");

  VariationResult res;
  if (n <= 1) {
    if (pinned) res.partition.push_back(table.first() + rr.ia);
    return res;
  }

  const bool sup = q.r == kInfExponent;
  double best = -1.0;
  std::vector<int> best_chain;
  std::vector<int> chain;
  const std::uint32_t full = 1u << n;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (pinned) {
      if (!(mask & 1u) || !(mask & (1u << (n - 1)))) continue;
    }
    chain.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) chain.push_back(i);
    double value = 0.0;
    if (sup) {
      for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        value = std::max(value, table.dist(rr.ia + chain[k], rr.ia + chain[k + 1]));
    } else {
      for (std::size_t k = chain.size() - 1; k-- > 0;)
        value += std::pow(table.dist(rr.ia + chain[k], rr.ia + chain[k + 1]), q.r);
    }
    if (value > best ||
        (value == best && !best_chain.empty() &&
         std::lexicographical_compare(chain.begin(), chain.end(), best_chain.begin(),
                                      best_chain.end()))) {
      best = value;
      best_chain = chain;
    }
  }

  res.value = sup ? best : (best > 0.0 ? std::pow(best, 1.0 / q.r) : 0.0);
  if (pinned || best > 0.0) {
    for (int i : best_chain) res.partition.push_back(table.first() + rr.ia + i);
  }
  return res;
}

/// V_s <= V_r + 1e-10 for 1 <= r <= s (the variation is decreasing in the
/// exponent).
template <typename Elem>
bool variation_monotonicity_check(const DiscreteCurve<Elem>& curve, double r, double s) {
  if (!(r >= 1.0) || !(s >= r)) throw BadExponent("monotonicity check requires 1 <= r <= s");
  const DistanceTable table(curve);
  const double vr = variation(table, {r, std::nullopt, EndpointMode::free}).value;
  const double vs = variation(table, {s, std::nullopt, EndpointMode::free}).value;
  return vs <= vr + 1e-10;
}

struct ConcatenationBounds {
  double lower;   // (V_r^r(left) + V_r^r(right))^(1/r)
  double middle;  // V_r of the whole interval
  double upper;   // V_r(left) + V_r(right)
};

/// Triangle inequalities for the concatenation at split: lower <= middle
/// <= upper, with equality throughout at r = 1. All three variations pin
/// their endpoints.
template <typename Elem>
ConcatenationBounds concatenation_check(const DiscreteCurve<Elem>& curve, int split, double r) {
  if (split <= curve.lo() || split >= curve.hi())
    throw BadInterval("concatenation split must be interior to the window");
  const DistanceTable table(curve);
  const auto pinned = [&](int a, int b) {
    return variation(table, {r, std::make_pair(a, b), EndpointMode::pinned}).value;
  };
  const double left = pinned(curve.lo(), split);
  const double right = pinned(split, curve.hi());
  const double whole = pinned(curve.lo(), curve.hi());
  ConcatenationBounds out{};
  if (r == kInfExponent)
    out.lower = std::max(left, right);
  else
    out.lower = std::pow(std::pow(left, r) + std::pow(right, r), 1.0 / r);
  out.middle = whole;
  out.upper = left + right;
  return out;
}

}  // namespace nlft
