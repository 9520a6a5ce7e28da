#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "checks.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "rng.hpp"
#include "variation.hpp"

namespace nlft {

struct EnsembleConfig {
  std::uint64_t seed = 1;
  int trials = 200;
  int support_lo = -8;
  int support_hi = 7;
  double radius = 0.9;
  int Q = 1024;
  DiscLaw law = DiscLaw::uniform_disc;
};

/// One aggregated row per trial: the worst ratio over the grid together
/// with the sides at the point where it occurred.
struct TrialRow {
  int trial = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double theta = 0.0;
  bool pass = true;
};

struct EnsembleSummary {
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  bool all_pass = true;
};

inline EnsembleSummary summarize(const std::vector<TrialRow>& rows) {
  EnsembleSummary s;
  std::vector<double> ratios;
  ratios.reserve(rows.size());
  for (const auto& row : rows) {
    s.max_ratio = std::max(s.max_ratio, row.ratio);
    s.all_pass = s.all_pass && row.pass;
    ratios.push_back(row.ratio);
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    s.median_ratio = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
  }
  return s;
}

inline Potential ensemble_potential(const EnsembleConfig& cfg, int trial) {
  return random_potential(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)),
                          cfg.support_lo, cfg.support_hi, cfg.radius, cfg.law);
}

namespace detail {

// Worst ratio over the grid, folded into one row.
template <typename CheckFn>
TrialRow worst_over_grid(const EnsembleConfig& cfg, int trial, CheckFn&& fn) {
  const CircleGrid grid = circle_grid(cfg.Q);
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.Q));
  parallel_for(static_cast<std::size_t>(cfg.Q),
               [&](std::size_t j) { reports[j] = fn(grid.point(static_cast<int>(j))); });
  TrialRow row;
  row.trial = trial;
  bool first = true;
  for (int j = 0; j < cfg.Q; ++j) {
    const auto& rep = reports[static_cast<std::size_t>(j)];
    row.pass = row.pass && rep.pass;
    if (first || rep.ratio > row.ratio) {
      row.lhs = rep.lhs;
      row.rhs = rep.rhs;
      row.ratio = rep.ratio;
      row.theta = grid.point(j).theta;
      first = false;
    }
  }
  return row;
}

}  // namespace detail

inline std::vector<TrialRow> run_prop21_ensemble(const EnsembleConfig& cfg, double r) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  for (int i = 0; i < cfg.trials; ++i) {
    const Potential f = ensemble_potential(cfg, i);
    rows[static_cast<std::size_t>(i)] = detail::worst_over_grid(
        cfg, i, [&](CirclePoint z) { return prop21_check(f, z, r); });
  }
  return rows;
}

inline std::vector<TrialRow> run_cor22_ensemble(const EnsembleConfig& cfg, double r) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  for (int i = 0; i < cfg.trials; ++i) {
    const Potential f = ensemble_potential(cfg, i);
    rows[static_cast<std::size_t>(i)] = detail::worst_over_grid(
        cfg, i, [&](CirclePoint z) { return cor22_check(f, z, r); });
  }
  return rows;
}

/// Multi-step log defect against the squared pinned sigma-variation over
/// the full support hull. Keep the radius small (<= 0.45) so the principal
/// logarithm always applies.
inline std::vector<TrialRow> run_step1_ensemble(const EnsembleConfig& cfg, double r) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  for (int i = 0; i < cfg.trials; ++i) {
    const Potential f = ensemble_potential(cfg, i);
    const int M = f.empty() ? 0 : f.min_index() - 1;
    const int N = f.empty() ? 0 : f.max_index();
    rows[static_cast<std::size_t>(i)] = detail::worst_over_grid(
        cfg, i, [&](CirclePoint z) { return step1_defect(f, z, M, N, r); });
  }
  return rows;
}

inline std::vector<TrialRow> run_hy_ensemble(const EnsembleConfig& cfg, double p) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const auto rep = hy_ratio(ensemble_potential(cfg, static_cast<int>(i)), p, cfg.Q);
    rows[i] = {static_cast<int>(i), rep.lhs, rep.rhs, rep.ratio, 0.0, rep.pass};
  });
  return rows;
}

inline std::vector<TrialRow> run_mpz_ensemble(const EnsembleConfig& cfg, double p, double r) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const auto rep = mpz_ratio(ensemble_potential(cfg, static_cast<int>(i)), p, r, cfg.Q);
    rows[i] = {static_cast<int>(i), rep.lhs, rep.rhs, rep.ratio, 0.0, rep.pass};
  });
  return rows;
}

inline std::vector<TrialRow> run_theorem_ensemble(const EnsembleConfig& cfg, double p, double r) {
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
  for (int i = 0; i < cfg.trials; ++i) {
    const auto rep = theorem_sides(ensemble_potential(cfg, i), p, r, cfg.Q);
    rows[static_cast<std::size_t>(i)] = {i, rep.lhs, rep.rhs, rep.ratio, 0.0, rep.pass};
  }
  return rows;
}

// ---------------------------------------------------------------------------
// verify drivers: per-trial reports for the identity / inequality checks

inline std::vector<CheckReport> run_verify_plancherel(const EnsembleConfig& cfg) {
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    reports[i] = check_plancherel(ensemble_potential(cfg, static_cast<int>(i)), cfg.Q);
    reports[i].metadata["trial"] = std::to_string(i);
  });
  return reports;
}

inline std::vector<CheckReport> run_verify_riemann_lebesgue(const EnsembleConfig& cfg) {
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    reports[i] = check_riemann_lebesgue(ensemble_potential(cfg, static_cast<int>(i)), cfg.Q);
    reports[i].metadata["trial"] = std::to_string(i);
  });
  return reports;
}

/// Transfer-norm identity: log(1 + ||T_n(z) - I||) = 1/2 log((1+|F_n|)/(1-|F_n|)).
inline std::vector<CheckReport> run_verify_norm_identity(const EnsembleConfig& cfg,
                                                         double tolerance = 1e-12) {
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    CounterRng rng(trial_seed(cfg.seed, i), 0x6E6F726Dull);
    const double mod = cfg.radius * std::sqrt(rng.uniform());
    const Complex fn = std::polar(mod, rng.uniform() * 2.0 * M_PI);
    const int n = static_cast<int>(
        std::floor(rng.uniform(cfg.support_lo, cfg.support_hi + 1)));
    const CirclePoint z{rng.uniform() * 2.0 * M_PI};
    CheckReport rep;
    rep.name = "norm-identity";
    rep.tolerance = tolerance;
    const GroupElement t = transfer_matrix(fn, n, z);
    rep.lhs = std::log1p(op_norm(t.pair() - pair_identity()));
    rep.rhs = 0.5 * std::log((1.0 + mod) / (1.0 - mod));
    rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
    rep.pass = std::abs(rep.lhs - rep.rhs) <= tolerance;
    rep.metadata["trial"] = std::to_string(i);
    detail::meta(rep, "F_abs", mod);
    reports[i] = rep;
  });
  return reports;
}

/// One-step log identity on a random entry of a random potential.
inline std::vector<CheckReport> run_verify_unit_step(const EnsembleConfig& cfg) {
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const Potential f = ensemble_potential(cfg, static_cast<int>(i));
    CounterRng rng(trial_seed(cfg.seed, i), 0x75737465ull);
    const int N = static_cast<int>(
        std::floor(rng.uniform(cfg.support_lo, cfg.support_hi + 1)));
    const CirclePoint z{rng.uniform() * 2.0 * M_PI};
    reports[i] = unit_step_defect(f, z, N);
    reports[i].metadata["trial"] = std::to_string(i);
  });
  return reports;
}

/// V_1 additivity on all points of a small grid, one report per trial
/// carrying the worst grid point.
inline std::vector<CheckReport> run_verify_v1(const EnsembleConfig& cfg, int grid_q = 64) {
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const Potential f = ensemble_potential(cfg, static_cast<int>(i));
    const CircleGrid grid = circle_grid(grid_q);
    CheckReport worst;
    bool all_pass = true;
    for (int j = 0; j < grid_q; ++j) {
      CheckReport rep = v1_identity(f, grid.point(j));
      all_pass = all_pass && rep.pass;
      if (j == 0 || std::abs(rep.lhs - rep.rhs) > std::abs(worst.lhs - worst.rhs)) worst = rep;
    }
    worst.pass = all_pass;
    worst.metadata["trial"] = std::to_string(i);
    reports[i] = worst;
  });
  return reports;
}

/// V_s <= V_r across a fixed exponent ladder on seeded gamma curves.
inline std::vector<CheckReport> run_verify_monotonicity(const EnsembleConfig& cfg) {
  static const std::pair<double, double> ladder[] = {
      {1.0, 1.3}, {1.2, 1.8}, {1.3, 2.0}, {2.0, 3.0}, {3.0, kInfExponent}, {1.0, kInfExponent}};
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const Potential f = ensemble_potential(cfg, static_cast<int>(i));
    CounterRng rng(trial_seed(cfg.seed, i), 0x6D6F6E6Full);
    const CirclePoint z{rng.uniform() * 2.0 * M_PI};
    const DistanceTable table(gamma_curve(f, z));
    CheckReport rep;
    rep.name = "monotonicity";
    rep.tolerance = 1e-10;
    rep.pass = true;
    double worst = -1.0;
    for (const auto& [r, s] : ladder) {
      const double vr = variation(table, {r}).value;
      const double vs = variation(table, {s}).value;
      if (vs - vr > worst) {
        worst = vs - vr;
        rep.lhs = vs;
        rep.rhs = vr;
      }
      rep.pass = rep.pass && vs <= vr + 1e-10;
    }
    rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
    rep.metadata["trial"] = std::to_string(i);
    reports[i] = rep;
  });
  return reports;
}

/// Concatenation triangle at a random interior split; the r = 1 case must
/// collapse to an equality.
inline std::vector<CheckReport> run_verify_triangle(const EnsembleConfig& cfg) {
  static const double exponents[] = {1.0, 1.5, 2.0};
  std::vector<CheckReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t i) {
    const Potential f = ensemble_potential(cfg, static_cast<int>(i));
    CounterRng rng(trial_seed(cfg.seed, i), 0x74726961ull);
    const CirclePoint z{rng.uniform() * 2.0 * M_PI};
    const auto curve = gamma_curve(f, z);
    CheckReport rep;
    rep.name = "triangle";
    rep.tolerance = 1e-10;
    rep.pass = true;
    if (curve.length() >= 3) {
      const int split =
          curve.lo() + 1 + static_cast<int>(rng.uniform() * (curve.length() - 2));
      for (double r : exponents) {
        const auto bounds = concatenation_check(curve, split, r);
        rep.pass = rep.pass && bounds.lower <= bounds.middle + 1e-10 &&
                   bounds.middle <= bounds.upper + 1e-10;
        if (r == 1.0)
          rep.pass = rep.pass && std::abs(bounds.upper - bounds.lower) <= 1e-12 &&
                     std::abs(bounds.middle - bounds.lower) <= 1e-12;
        if (r == 2.0) {
          rep.lhs = bounds.lower;
          rep.rhs = bounds.upper;
          detail::meta(rep, "middle", bounds.middle);
        }
      }
      detail::meta(rep, "split", split);
    }
    rep.ratio = detail::ratio_of(rep.lhs, rep.rhs);
    rep.metadata["trial"] = std::to_string(i);
    reports[i] = rep;
  });
  return reports;
}

}  // namespace nlft
