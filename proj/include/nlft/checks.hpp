#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "variation.hpp"

namespace nlft {

/// One executed identity / inequality check. For checks whose constant the
/// theory leaves unspecified, `pass` only asserts that the recorded ratio is
/// finite; boundedness is judged at the ensemble level.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  std::map<std::string, std::string> metadata;
};

namespace detail {

inline void meta(CheckReport& rep, const std::string& key, double value) {
  rep.metadata[key] = float17(value);
}

inline double conjugate_exponent(double p) {
  return p == 1.0 ? kInfExponent : p / (p - 1.0);
}

inline double ratio_of(double lhs, double rhs) {
  if (rhs != 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

/// ((1/Q) sum v^q)^(1/q) against normalized measure; max for q = infinity.
inline double grid_lp_norm(const std::vector<double>& values, double q) {
  if (q == kInfExponent) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = std::pow(v, q) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / static_cast<double>(values.size());
  return mean > 0.0 ? std::pow(mean, 1.0 / q) : 0.0;
}

inline std::vector<double> log_abs_a_grid(const Potential& f, int Q) {
  const CircleGrid grid = circle_grid(Q);
  std::vector<double> out(static_cast<std::size_t>(Q));
  parallel_for(static_cast<std::size_t>(Q), [&](std::size_t j) {
    out[j] = std::log(std::abs(full_nft(f, grid.point(static_cast<int>(j))).a));
  });
  return out;
}

inline void require_resolving_grid(const Potential& f, int Q) {
  const int width = f.empty() ? 0 : f.max_index() - f.min_index();
  if (Q < 2 * width + 2)
    throw BadInterval("grid too coarse: need Q >= 2*(support width)+2");
}

}  // namespace detail

/// Per-point r-variation of the partial-sum curve over the whole grid.
inline std::vector<double> sigma_variation_grid(const Potential& f, double r, int Q) {
  const CircleGrid grid = circle_grid(Q);
  std::vector<double> out(static_cast<std::size_t>(Q));
  parallel_for(static_cast<std::size_t>(Q), [&](std::size_t j) {
    out[j] = variation(sigma_curve(f, grid.point(static_cast<int>(j))), {r}).value;
  });
  return out;
}

/// g(t) = log((1+|t|)/(1-|t|)) / (2|t|), with g(0) = 1. Monotone increasing
/// on [0, 1); the exact scalar linking one-step group logarithms to algebra
/// increments.
inline double g_function(double t) {
  const double x = std::abs(t);
  if (!(x < 1.0)) throw OutOfDisc("g_function requires |t| < 1");
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 * (1.0 / 7.0 + x2 / 9.0)));
  }
  return std::log((1.0 + x) / (1.0 - x)) / (2.0 * x);
}

/// Mean of log|a(z)| over the grid against -1/2 sum log(1 - |F_n|^2).
/// An identity, so the tolerance is relative quadrature error.
inline CheckReport check_plancherel(const Potential& f, int Q) {
  detail::require_resolving_grid(f, Q);
  CheckReport rep;
  rep.name = "plancherel";
  rep.tolerance = 1e-8;
  rep.lhs = quadrature(circle_grid(Q), detail::log_abs_a_grid(f, Q));
  double sum = 0.0;
  for (const auto& e : f.entries()) sum += std::log1p(-std::norm(e.value));
  rep.rhs = -0.5 * sum;
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance * std::max(1.0, std::abs(rep.rhs));
  detail::meta(rep, "Q", Q);
  return rep;
}

/// sup_z sqrt(log|a(z)|) <= sum_n sqrt(log((1-|F_n|^2)^{-1/2})), the ell^1
/// to L^infinity bound. One-sided with 1e-10 slack.
inline CheckReport check_riemann_lebesgue(const Potential& f, int Q) {
  detail::require_resolving_grid(f, Q);
  CheckReport rep;
  rep.name = "riemann-lebesgue";
  rep.tolerance = 1e-10;
  const auto logs = detail::log_abs_a_grid(f, Q);
  double lhs = 0.0;
  for (double v : logs) lhs = std::max(lhs, std::sqrt(std::max(0.0, v)));
  rep.lhs = lhs;
  double rhs = 0.0;
  for (const auto& e : f.entries())
    rhs += std::sqrt(-0.5 * std::log1p(-std::norm(e.value)));
  rep.rhs = rhs;
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  rep.pass = rep.lhs <= rep.rhs + rep.tolerance;
  detail::meta(rep, "Q", Q);
  return rep;
}

/// Hausdorff-Young ratio: L^{p'} grid norm of sqrt(log|a|) over the ell^p
/// norm of sqrt(|log(1-|F_n|^2)|). The constant C_p is not specified, so
/// the deliverable is the recorded ratio.
inline CheckReport hy_ratio(const Potential& f, double p, int Q) {
  if (!(p > 1.0) || !(p < 2.0)) throw BadExponent("hy_ratio requires 1 < p < 2");
  detail::require_resolving_grid(f, Q);
  CheckReport rep;
  rep.name = "hausdorff-young";
  const auto logs = detail::log_abs_a_grid(f, Q);
  std::vector<double> roots(logs.size());
  for (std::size_t j = 0; j < logs.size(); ++j) roots[j] = std::sqrt(std::max(0.0, logs[j]));
  rep.lhs = detail::grid_lp_norm(roots, detail::conjugate_exponent(p));
  rep.rhs = sqrt_log_norm(f, p);
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  rep.pass = std::isfinite(rep.ratio);
  detail::meta(rep, "p", p);
  detail::meta(rep, "Q", Q);
  return rep;
}

/// One-step identity: || log(gamma_{N-1}^{-1} gamma_N) - (sigma_N -
/// sigma_{N-1}) || equals |g(F_N) - 1| |F_N| exactly, and the logarithm
/// equals g(F_N) (0, F_N z^N) componentwise. Skipped (with a flag) when the
/// principal logarithm does not apply.
inline CheckReport unit_step_defect(const Potential& f, CirclePoint z, int N) {
  CheckReport rep;
  rep.name = "unit-step";
  rep.tolerance = 1e-11;
  detail::meta(rep, "N", N);
  detail::meta(rep, "theta", z.theta);

  GroupElement before, after;
  for (const auto& e : f.entries()) {
    if (e.n > N) break;
    after = multiply(after, transfer_matrix(e.value, e.n, z));
    if (e.n <= N - 1) before = after;
  }
  const GroupElement step = multiply(inverse(before), after);

  AlgebraElement lg;
  try {
    lg = log_group(step);
  } catch (const OutOfDomain&) {
    rep.metadata["skipped"] = "1";
    rep.pass = true;
    return rep;
  }

  const Complex fn = f.value_at(N);
  const Complex w = fn * z.z_pow(N);
  const AlgebraElement increment{0.0, w.real(), -w.imag()};
  const double g = g_function(std::abs(fn));
  rep.lhs = alg_norm(lg - increment);
  rep.rhs = std::abs(g - 1.0) * std::abs(fn);
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  const double component_defect = alg_norm(lg - g * increment);
  detail::meta(rep, "component_defect", component_defect);
  detail::meta(rep, "F_abs", std::abs(fn));
  rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance && component_defect <= rep.tolerance;
  return rep;
}

/// Multi-step defect || log(gamma_M^{-1} gamma_N) - (sigma_N - sigma_M) ||
/// against the squared pinned variation of sigma on [M, N]. The constant is
/// unspecified; the recorded ratio is the deliverable.
inline CheckReport step1_defect(const Potential& f, CirclePoint z, int M, int N, double r) {
  if (!(r >= 1.0)) throw BadExponent("step1_defect requires r >= 1");
  if (M > N) throw BadInterval("step1_defect requires M <= N");
  CheckReport rep;
  rep.name = "step1";
  rep.tolerance = 1e-11;
  detail::meta(rep, "M", M);
  detail::meta(rep, "N", N);
  detail::meta(rep, "r", r);
  detail::meta(rep, "theta", z.theta);

  const auto gcurve = gamma_curve(f, z);
  const auto scurve = sigma_curve(f, z);
  // the curves are constant outside the stored window
  const int a = std::clamp(M, gcurve.lo(), gcurve.hi());
  const int b = std::clamp(N, gcurve.lo(), gcurve.hi());

  const GroupElement step = multiply(inverse(gcurve.at(a)), gcurve.at(b));
  AlgebraElement lg;
  try {
    lg = log_group(step);
  } catch (const OutOfDomain&) {
    rep.metadata["skipped"] = "1";
    rep.pass = true;
    return rep;
  }
  rep.lhs = alg_norm(lg - (scurve.at(b) - scurve.at(a)));
  const double vr =
      variation(scurve, {r, std::make_pair(a, b), EndpointMode::pinned}).value;
  rep.rhs = vr * vr;
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  rep.pass = rep.rhs > 0.0 || rep.lhs <= rep.tolerance;
  return rep;
}

/// V_1(gamma)(z) = 1/2 sum_n log((1+|F_n|)/(1-|F_n|)), exactly: the finest
/// partition is optimal and one-step distances are given by the transfer
/// norm identity.
inline CheckReport v1_identity(const Potential& f, CirclePoint z) {
  CheckReport rep;
  rep.name = "v1-additivity";
  rep.tolerance = 1e-10;
  rep.lhs = variation(gamma_curve(f, z), {1.0}).value;
  rep.rhs = 0.5 * log_weight_norm(f, 1.0);
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance;
  detail::meta(rep, "theta", z.theta);
  return rep;
}

/// Group-vs-algebra comparison, forward direction: the excess
/// V_r(gamma) - V_r(sigma) against min(V_r^2, V_r^r)(sigma) plus the
/// large-jump budget ||F||_r^{r-1} ||log((1+|F|)/(1-|F|))||_r.
inline CheckReport prop21_check(const Potential& f, CirclePoint z, double r) {
  if (!(r >= 1.0) || !(r < 2.0)) throw BadExponent("prop21_check requires 1 <= r < 2");
  CheckReport rep;
  rep.name = "prop21";
  const double vg = variation(gamma_curve(f, z), {r}).value;
  const double vs = variation(sigma_curve(f, z), {r}).value;
  const double excess = vg - vs;
  const double budget = std::min(vs * vs, std::pow(vs, r)) +
                        std::pow(lp_norm(f, r), r - 1.0) * log_weight_norm(f, r);
  rep.lhs = excess;
  rep.rhs = budget;
  rep.ratio = excess <= 0.0 ? 0.0 : detail::ratio_of(excess, budget);
  rep.pass = budget > 0.0 || excess <= 1e-10;
  detail::meta(rep, "r", r);
  detail::meta(rep, "theta", z.theta);
  detail::meta(rep, "v_gamma", vg);
  detail::meta(rep, "v_sigma", vs);
  return rep;
}

/// Reverse direction: V_r(sigma) - V_r(gamma) against min(V_r^2, V_r^r)
/// of gamma, with no large-jump term.
inline CheckReport cor22_check(const Potential& f, CirclePoint z, double r) {
  if (!(r >= 1.0) || !(r < 2.0)) throw BadExponent("cor22_check requires 1 <= r < 2");
  CheckReport rep;
  rep.name = "cor22";
  const double vg = variation(gamma_curve(f, z), {r}).value;
  const double vs = variation(sigma_curve(f, z), {r}).value;
  const double excess = vs - vg;
  const double budget = std::min(vg * vg, std::pow(vg, r));
  rep.lhs = excess;
  rep.rhs = budget;
  rep.ratio = excess <= 0.0 ? 0.0 : detail::ratio_of(excess, budget);
  rep.pass = budget > 0.0 || excess <= 1e-10;
  detail::meta(rep, "r", r);
  detail::meta(rep, "theta", z.theta);
  detail::meta(rep, "v_gamma", vg);
  detail::meta(rep, "v_sigma", vs);
  return rep;
}

struct LargeJumpResult {
  std::vector<int> indices;  // {n : |F_n| > delta/2}
  double bound = 0.0;        // (2 ||F||_r / delta)^r
  bool bound_ok = false;     // J < bound, vacuous when empty
};

/// Chebyshev bound for the number of large jumps.
inline LargeJumpResult large_jump_set(const Potential& f, double delta, double r = 1.0) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw BadInterval("large_jump_set requires delta in (0,1)");
  if (!(r >= 1.0)) throw BadExponent("large_jump_set requires r >= 1");
  LargeJumpResult res;
  for (const auto& e : f.entries())
    if (std::abs(e.value) > delta / 2.0) res.indices.push_back(e.n);
  res.bound = std::pow(2.0 * lp_norm(f, r) / delta, r);
  res.bound_ok = res.indices.empty() || static_cast<double>(res.indices.size()) < res.bound;
  return res;
}

/// Variational Menshov-Paley-Zygmund ratio: L^{p'} grid norm of V_r(sigma)
/// over ||F||_p. At p = r = 1 this is an equality; for p < r < p' the ratio
/// must respect 2 (2^{1/p - 1/r} - 1)^{-1}.
inline CheckReport mpz_ratio(const Potential& f, double p, double r, int Q) {
  if (!(p >= 1.0) || !(p < 2.0)) throw BadExponent("mpz_ratio requires 1 <= p < 2");
  if (!(r >= p)) throw BadExponent("mpz_ratio requires r >= p");
  CheckReport rep;
  rep.name = "mpz";
  const double pp = detail::conjugate_exponent(p);
  rep.lhs = detail::grid_lp_norm(sigma_variation_grid(f, r, Q), pp);
  rep.rhs = lp_norm(f, p);
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  detail::meta(rep, "p", p);
  detail::meta(rep, "r", r);
  detail::meta(rep, "Q", Q);
  if (p == 1.0 && r == 1.0) {
    rep.tolerance = 1e-9;
    rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance;
  } else if (r > p && r < pp) {
    const double constant = 2.0 / (std::pow(2.0, 1.0 / p - 1.0 / r) - 1.0);
    detail::meta(rep, "lemma_constant", constant);
    rep.tolerance = 1e-9;
    rep.pass = rep.ratio <= constant + rep.tolerance;
  } else {
    rep.pass = std::isfinite(rep.ratio);
  }
  return rep;
}

struct SharpnessPoint {
  int M;
  double lhs, rhs, ratio;
};

struct SharpnessSeries {
  std::vector<SharpnessPoint> points;
  double fitted_exponent = 0.0;  // slope of log(ratio) against log(log M)
};

/// Growth of the endpoint ratio along the trapezoidal family: the r = p
/// variation norm of sigma(F^M) against ||F^M||_p, with the exponent fitted
/// by least squares.
inline SharpnessSeries sharpness_series(double p, const std::vector<int>& Ms, int Q) {
  if (!(p > 1.0) || !(p < 2.0)) throw BadExponent("sharpness_series requires 1 < p < 2");
  SharpnessSeries series;
  const double pp = detail::conjugate_exponent(p);
  for (int M : Ms) {
    const Potential f = vallee_poussin_potential(M);
    const double lhs = detail::grid_lp_norm(sigma_variation_grid(f, p, Q), pp);
    const double rhs = lp_norm(f, p);
    series.points.push_back({M, lhs, rhs, detail::ratio_of(lhs, rhs)});
  }
  // least-squares slope of log(ratio) on log(log M)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(series.points.size());
  for (const auto& pt : series.points) {
    const double x = std::log(std::log(static_cast<double>(pt.M)));
    const double y = std::log(pt.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  series.fitted_exponent = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  return series;
}

/// Dyadic splitting of a potential by cumulative ell^p mass. levels[n-1]
/// holds the 2^n half-open position ranges of level n, partitioning the
/// support; level n+1 refines level n by construction (its boundaries reuse
/// the same first-crossing rule at the same thresholds).
struct DyadicDecomposition {
  double p = 0.0;
  int depth = 0;
  std::vector<std::vector<std::pair<int, int>>> levels;
  std::vector<double> atom_mass;  // |F_j|^p per support position
  double total_mass = 0.0;

  double max_atom() const {
    double m = 0.0;
    for (double a : atom_mass) m = std::max(m, a);
    return m;
  }
};

inline DyadicDecomposition ck_decompose(const Potential& f, double p, int depth) {
  if (!(p >= 1.0)) throw BadExponent("ck_decompose requires p >= 1");
  if (depth < 1 || depth > 20) throw TooLarge("ck_decompose depth must lie in [1, 20]");
  DyadicDecomposition dec;
  dec.p = p;
  dec.depth = depth;
  dec.atom_mass.reserve(f.size());
  double total = 0.0;
  for (const auto& e : f.entries()) {
    const double mass = std::pow(std::abs(e.value), p);
    dec.atom_mass.push_back(mass);
    total += mass;
  }
  if (!(total > 0.0)) throw EmptyPotential("ck_decompose requires nonzero ell^p mass");
  dec.total_mass = total;

  const int m = static_cast<int>(dec.atom_mass.size());
  // Kahan-compensated cumulative mass keeps the normalized sums within a
  // few ulps for any support size, so thresholds that land exactly on an
  // atom boundary (equal-mass splits) resolve the way exact arithmetic
  // would; the 1e-14 slack absorbs the remaining rounding.
  std::vector<double> cum(static_cast<std::size_t>(m));
  double running = 0.0, comp = 0.0;
  for (int j = 0; j < m; ++j) {
    const double y = dec.atom_mass[static_cast<std::size_t>(j)] - comp;
    const double t = running + y;
    comp = (t - running) - y;
    running = t;
    cum[static_cast<std::size_t>(j)] = running / total;
  }

  dec.levels.resize(static_cast<std::size_t>(depth));
  for (int n = 1; n <= depth; ++n) {
    const int K = 1 << n;
    auto& level = dec.levels[static_cast<std::size_t>(n - 1)];
    level.reserve(static_cast<std::size_t>(K));
    int begin = 0;
    int j = 0;
    for (int k = 1; k < K; ++k) {
      const double threshold = static_cast<double>(k) / static_cast<double>(K) - 1e-14;
      while (j < m && cum[static_cast<std::size_t>(j)] < threshold) ++j;
      // t_k^n = smallest position where the cumulative mass reaches k/2^n
      level.emplace_back(begin, std::min(j + 1, m));
      begin = std::min(j + 1, m);
    }
    level.emplace_back(begin, m);  // last interval takes the remainder
  }
  return dec;
}

/// Numerical majorization chain for the dyadic bound:
///   (i)  ||V_r(sigma)||_{L^{p'}} <= 2 sum_n (sum_k ||S_{I_k^n}||^r)^{1/r}
///        + tail, with tail = 2 (sum_k ell1(I_k^D)^r)^{1/r} covering the
///        depth truncation (leftover pieces of a chain step are disjoint
///        subsets of the deepest-level intervals);
///   (ii) per interval, ||S_I||_{L^{p'}} <= (sum_{j in I} |F_j|^p)^{1/p};
///   (iii) the dyadic sum respects 2 sum_n 2^{n/r} (2^{-n} + A)^{1/p}
///        ||F||_p, the lemma constant corrected by the largest atom mass
///        fraction A (atoms prevent exact 2^{-n} splitting).
inline CheckReport ck_bound_check(const Potential& f, double p, double r, int Q,
                                  int depth = 10) {
  if (!(p >= 1.0) || !(p < 2.0)) throw BadExponent("ck_bound_check requires 1 <= p < 2");
  const double pp = detail::conjugate_exponent(p);
  if (!(r > p) || !(r < pp)) throw BadExponent("ck_bound_check requires p < r < p'");
  const DyadicDecomposition dec = ck_decompose(f, p, depth);
  const CircleGrid grid = circle_grid(Q);
  const int m = static_cast<int>(f.size());

  // flatten nonempty intervals
  struct Interval {
    int level, begin, end;
  };
  std::vector<Interval> intervals;
  for (int n = 1; n <= depth; ++n)
    for (const auto& [b, e] : dec.levels[static_cast<std::size_t>(n - 1)])
      if (b < e) intervals.push_back({n, b, e});

  const bool sup_norm = pp == kInfExponent;
  std::vector<double> norm_acc(intervals.size(), 0.0);
  std::vector<double> vr_values(static_cast<std::size_t>(Q));
  std::vector<Complex> prefix(static_cast<std::size_t>(m) + 1);
  for (int jz = 0; jz < Q; ++jz) {
    const CirclePoint z = grid.point(jz);
    prefix[0] = {0.0, 0.0};
    int idx = 0;
    for (const auto& e : f.entries()) {
      prefix[static_cast<std::size_t>(idx + 1)] =
          prefix[static_cast<std::size_t>(idx)] + e.value * z.z_pow(e.n);
      ++idx;
    }
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      const double s = std::abs(prefix[static_cast<std::size_t>(intervals[k].end)] -
                                prefix[static_cast<std::size_t>(intervals[k].begin)]);
      if (sup_norm)
        norm_acc[k] = std::max(norm_acc[k], s);
      else
        norm_acc[k] += std::pow(s, pp);
    }
    vr_values[static_cast<std::size_t>(jz)] = variation(sigma_curve(f, z), {r}).value;
  }

  std::vector<double> interval_norm(intervals.size());
  for (std::size_t k = 0; k < intervals.size(); ++k)
    interval_norm[k] =
        sup_norm ? norm_acc[k] : std::pow(norm_acc[k] / static_cast<double>(Q), 1.0 / pp);

  // (ii) per-interval Hausdorff-Young against the ell^p mass
  bool hy_ok = true;
  double hy_worst = 0.0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    double mass = 0.0;
    for (int j = intervals[k].begin; j < intervals[k].end; ++j)
      mass += dec.atom_mass[static_cast<std::size_t>(j)];
    const double slack = interval_norm[k] - std::pow(mass, 1.0 / p);
    hy_worst = std::max(hy_worst, slack);
    if (slack > 1e-9) hy_ok = false;
  }

  // (i) main chain
  std::vector<double> level_term(static_cast<std::size_t>(depth), 0.0);
  for (std::size_t k = 0; k < intervals.size(); ++k)
    level_term[static_cast<std::size_t>(intervals[k].level - 1)] +=
        std::pow(interval_norm[k], r);
  double dyadic_sum = 0.0;
  for (double lt : level_term) dyadic_sum += std::pow(lt, 1.0 / r);
  dyadic_sum *= 2.0;

  double tail_sum = 0.0;
  for (const auto& [b, e] : dec.levels[static_cast<std::size_t>(depth - 1)]) {
    double mass1 = 0.0;
    for (int j = b; j < e; ++j) mass1 += std::abs(f.entries()[static_cast<std::size_t>(j)].value);
    tail_sum += std::pow(mass1, r);
  }
  const double tail = 2.0 * std::pow(tail_sum, 1.0 / r);

  const double lhs = detail::grid_lp_norm(vr_values, pp);
  const bool main_ok = lhs <= dyadic_sum + tail + 1e-9 * std::max(1.0, lhs);

  // (iii) corrected constant
  const double atom_fraction = dec.max_atom() / dec.total_mass;
  const double fp = lp_norm(f, p);
  double corrected = 0.0;
  for (int n = 1; n <= depth; ++n)
    corrected += std::pow(2.0, static_cast<double>(n) / r) *
                 std::pow(std::pow(2.0, -static_cast<double>(n)) + atom_fraction, 1.0 / p);
  corrected *= 2.0 * fp;
  const bool const_ok = dyadic_sum <= corrected + 1e-9;

  CheckReport rep;
  rep.name = "ck-bound";
  rep.tolerance = 1e-9;
  rep.lhs = lhs;
  rep.rhs = dyadic_sum + tail;
  rep.ratio = detail::ratio_of(lhs, fp);
  rep.pass = main_ok && hy_ok && const_ok;
  detail::meta(rep, "p", p);
  detail::meta(rep, "r", r);
  detail::meta(rep, "Q", Q);
  detail::meta(rep, "depth", depth);
  detail::meta(rep, "dyadic_sum", dyadic_sum);
  detail::meta(rep, "tail", tail);
  detail::meta(rep, "atom_fraction", atom_fraction);
  detail::meta(rep, "corrected_constant", corrected / std::max(fp, 1e-300));
  detail::meta(rep, "ideal_constant", 2.0 / (std::pow(2.0, 1.0 / p - 1.0 / r) - 1.0));
  detail::meta(rep, "hy_worst_slack", hy_worst);
  return rep;
}

/// Two-regime bound of the main estimate: the exceptional set S collects
/// grid points with V_s(gamma) <= 1 (s = r when p < r < 2, s = (p+2)/2 when
/// r >= 2); both restricted integrals run against the full normalized
/// measure via indicators. The recorded ratio is lhs over the log-weight
/// norm; at p = r = 1 it must not exceed 1.
inline CheckReport theorem_sides(const Potential& f, double p, double r, int Q) {
  if (!(p >= 1.0) || !(p < 2.0)) throw BadExponent("theorem_sides requires 1 <= p < 2");
  if (!(r > p) && !(p == 1.0 && r == 1.0))
    throw BadExponent("theorem_sides requires r > p (or p = r = 1)");
  const double s = r < 2.0 ? r : 0.5 * (p + 2.0);
  const double pp = detail::conjugate_exponent(p);
  const CircleGrid grid = circle_grid(Q);

  std::vector<double> vr(static_cast<std::size_t>(Q)), vs(static_cast<std::size_t>(Q));
  parallel_for(static_cast<std::size_t>(Q), [&](std::size_t j) {
    const DistanceTable table(gamma_curve(f, grid.point(static_cast<int>(j))));
    vr[j] = variation(table, {r}).value;
    vs[j] = s == r ? vr[j] : variation(table, {s}).value;
  });

  double lhs_in = 0.0, lhs_out = 0.0;
  int in_count = 0;
  if (pp == kInfExponent) {
    double max_in = 0.0, max_out = 0.0;
    for (int j = 0; j < Q; ++j) {
      if (vs[static_cast<std::size_t>(j)] <= 1.0) {
        max_in = std::max(max_in, vr[static_cast<std::size_t>(j)]);
        ++in_count;
      } else {
        max_out = std::max(max_out, vr[static_cast<std::size_t>(j)]);
      }
    }
    lhs_in = max_in;
    lhs_out = max_out > 0.0 ? std::pow(max_out, 1.0 / r) : 0.0;
  } else {
    double sum_in = 0.0, sum_out = 0.0;
    for (int j = 0; j < Q; ++j) {
      const double v = vr[static_cast<std::size_t>(j)];
      if (vs[static_cast<std::size_t>(j)] <= 1.0) {
        sum_in += std::pow(v, pp);
        ++in_count;
      } else {
        sum_out += std::pow(v, pp / r);
      }
    }
    lhs_in = sum_in > 0.0 ? std::pow(sum_in / Q, 1.0 / pp) : 0.0;
    lhs_out = sum_out > 0.0 ? std::pow(sum_out / Q, 1.0 / pp) : 0.0;
  }

  CheckReport rep;
  rep.name = "main-theorem";
  rep.lhs = lhs_in + lhs_out;
  rep.rhs = log_weight_norm(f, p);
  rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
  detail::meta(rep, "p", p);
  detail::meta(rep, "r", r);
  detail::meta(rep, "s", s);
  detail::meta(rep, "Q", Q);
  detail::meta(rep, "exceptional_fraction", static_cast<double>(in_count) / Q);
  if (p == 1.0 && r == 1.0) {
    rep.tolerance = 1e-10;
    rep.pass = rep.ratio <= 1.0 + rep.tolerance;
  } else {
    rep.pass = std::isfinite(rep.ratio);
  }
  return rep;
}

}  // namespace nlft
