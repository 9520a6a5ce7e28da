#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nlft/checks.hpp>
#include <nlft/experiments.hpp>
#include <nlft/rng.hpp>

using namespace nlft;

namespace {
const Potential kSingle06({{0, Complex(0.6, 0.0)}});
}

TEST_CASE("plancherel identity") {
  CHECK(check_plancherel(Potential{}, 8).pass);

  const auto single = check_plancherel(kSingle06, 16);
  CHECK(single.pass);
  CHECK(single.lhs == Catch::Approx(std::log(1.25)).epsilon(1e-12));
  CHECK(single.rhs == Catch::Approx(std::log(1.25)).epsilon(1e-12));

  CHECK_THROWS_AS(check_plancherel(dirichlet_potential(4), 8), BadInterval);

  SECTION("radius 0.9 needs a converged grid: Q = 2^15 settles the identity") {
    // At radius 0.9 the continuation of a(z) has zeros within ~1e-3 of the
    // circle, so the trapezoid error at Q = 2^12 is still ~1e-5; the mean
    // converges to the closed form once Q clears the slow modes.
    const Potential f = random_potential(7, -8, 8, 0.9);
    const auto rep = check_plancherel(f, 1 << 15);
    CHECK(rep.pass);
    CHECK(std::abs(rep.lhs - rep.rhs) <= 1e-10 * std::max(1.0, std::abs(rep.rhs)));
    const auto rep2 = check_plancherel(f, 1 << 16);
    CHECK(std::abs(rep.lhs - rep2.lhs) <= 1e-10);
  }

  SECTION("moderate-modulus ensembles resolve at the nominal Q = 2^12") {
    for (int trial = 0; trial < 25; ++trial) {
      const Potential f =
          random_potential(trial_seed(1, trial), -8, 7, 0.8, DiscLaw::uniform_modulus);
      REQUIRE(check_plancherel(f, 1 << 12).pass);
    }
  }
}

TEST_CASE("l1 bound on sqrt(log|a|)") {
  CHECK(check_riemann_lebesgue(Potential{}, 4).pass);

  const auto single = check_riemann_lebesgue(kSingle06, 16);
  CHECK(single.pass);
  // single factor: both sides equal sqrt(log(5/4))
  CHECK(single.lhs == Catch::Approx(std::sqrt(std::log(1.25))).epsilon(1e-12));
  CHECK(single.rhs == Catch::Approx(std::sqrt(std::log(1.25))).epsilon(1e-12));

  for (int trial = 0; trial < 200; ++trial) {
    const Potential f = random_potential(trial_seed(31, trial), -8, 7, 0.9);
    CHECK(check_riemann_lebesgue(f, 256).pass);
  }
}

TEST_CASE("hausdorff-young ratio") {
  CHECK(hy_ratio(Potential{}, 1.5, 8).ratio == 0.0);
  CHECK_THROWS_AS(hy_ratio(kSingle06, 1.0, 8), BadExponent);
  CHECK_THROWS_AS(hy_ratio(kSingle06, 2.0, 8), BadExponent);

  SECTION("single factor: lhs picks up a factor 1/sqrt(2) from log|a| = |log(1-|F|^2)|/2") {
    for (double p : {1.2, 1.5, 1.8}) {
      const auto rep = hy_ratio(kSingle06, p, 32);
      CHECK(rep.ratio == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
  }

  SECTION("ensemble max ratio is stable under Q doubling and size doubling") {
    double max_lo = 0.0, max_hi = 0.0, max_double = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
      const Potential f = random_potential(trial_seed(33, trial), -8, 7, 0.9);
      const double ratio = hy_ratio(f, 1.5, 1 << 9).ratio;
      max_double = std::max(max_double, ratio);
      if (trial < 60) {
        max_lo = std::max(max_lo, ratio);
        max_hi = std::max(max_hi, hy_ratio(f, 1.5, 1 << 10).ratio);
      }
    }
    CHECK(std::abs(max_hi - max_lo) <= 0.05 * max_lo);
    CHECK(std::abs(max_double - max_lo) <= 0.10 * max_lo);
  }
}

TEST_CASE("g function") {
  CHECK(g_function(0.0) == 1.0);
  CHECK(g_function(0.5) == Catch::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(g_function(1.0), OutOfDisc);

  SECTION("monotone increasing on [0, 1)") {
    double prev = g_function(0.0);
    for (int i = 1; i <= 99; ++i) {
      const double cur = g_function(i / 100.0);
      CHECK(cur > prev);
      prev = cur;
    }
  }

  SECTION("series oracle and the quadratic bound") {
    for (int i = 0; i <= 300; ++i) {
      const double t = i / 1000.0;
      // sum t^{2k} / (2k+1) until the terms vanish
      double series = 0.0, term = 1.0;
      for (int k = 0; term > 1e-18; ++k) {
        series += term / (2 * k + 1);
        term *= t * t;
      }
      CHECK(std::abs(g_function(t) - series) <= 1e-13);
    }
    for (int i = 0; i <= 500; ++i) {
      const double t = i / 1000.0;
      CHECK(g_function(t) - 1.0 <= t * t);
    }
  }
}

TEST_CASE("one-step log identity") {
  SECTION("zero entry: defect 0 = 0") {
    const auto rep = unit_step_defect(kSingle06, CirclePoint{0.4}, 5);
    CHECK(rep.pass);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.lhs <= 1e-13);
  }

  SECTION("F = 1/2 pins the right-hand side") {
    const Potential f({{2, Complex(0.5, 0.0)}});
    const auto rep = unit_step_defect(f, CirclePoint{1.3}, 2);
    CHECK(rep.pass);
    CHECK(rep.rhs == Catch::Approx(0.5 * (std::log(3.0) - 1.0)).epsilon(1e-12));
  }

  SECTION("skips with a flag when the logarithm does not apply") {
    const Potential f({{0, Complex(0.8, 0.0)}});
    const auto rep = unit_step_defect(f, CirclePoint{0.0}, 0);
    CHECK(rep.pass);
    CHECK(rep.metadata.count("skipped") == 1);
  }

  SECTION("seeded ensemble at radius 0.45 is exact to 1e-11") {
    EnsembleConfig cfg;
    cfg.seed = 35;
    cfg.trials = 200;
    cfg.radius = 0.45;
    for (const auto& rep : run_verify_unit_step(cfg)) {
      REQUIRE(rep.pass);
      CHECK(rep.metadata.count("skipped") == 0);
    }
  }
}

TEST_CASE("multi-step log defect") {
  SECTION("single-step interval reduces to the one-step identity") {
    const Potential f({{0, Complex(0.3, 0.2)}, {1, Complex(-0.2, 0.25)}});
    const CirclePoint z{0.9};
    const auto one = unit_step_defect(f, z, 1);
    const auto multi = step1_defect(f, z, 0, 1, 1.5);
    CHECK(std::abs(one.lhs - multi.lhs) <= 1e-12);
  }

  SECTION("zero potential on the interval gives ratio 0") {
    const auto rep = step1_defect(Potential{}, CirclePoint{0.1}, -3, 3, 1.5);
    CHECK(rep.pass);
    CHECK(rep.ratio == 0.0);
  }

  SECTION("ratio stays bounded as the radius halves") {
    double max_ratio[2] = {0.0, 0.0};
    int idx = 0;
    for (double radius : {0.05, 0.025}) {
      EnsembleConfig cfg;
      cfg.seed = 37;
      cfg.trials = 100;
      cfg.support_lo = -4;
      cfg.support_hi = 3;
      cfg.radius = radius;
      cfg.Q = 64;
      for (const auto& row : run_step1_ensemble(cfg, 1.5))
        max_ratio[idx] = std::max(max_ratio[idx], row.ratio);
      ++idx;
    }
    CHECK(max_ratio[0] < 10.0);
    CHECK(max_ratio[1] < 10.0);
    CHECK(max_ratio[1] <= 3.0 * max_ratio[0]);
    CHECK(max_ratio[0] <= 3.0 * max_ratio[1]);
  }

  SECTION("ensemble max ratio is stable under size doubling") {
    EnsembleConfig cfg;
    cfg.seed = 38;
    cfg.trials = 200;
    cfg.support_lo = -4;
    cfg.support_hi = 3;
    cfg.radius = 0.05;
    cfg.Q = 64;
    const auto rows = run_step1_ensemble(cfg, 1.5);
    double max_half = 0.0, max_full = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
      max_full = std::max(max_full, rows[static_cast<std::size_t>(i)].ratio);
      if (i < 100) max_half = std::max(max_half, rows[static_cast<std::size_t>(i)].ratio);
    }
    CHECK(std::abs(max_full - max_half) <= 0.10 * max_half);
  }
}

TEST_CASE("V1 additivity") {
  CHECK(v1_identity(Potential{}, CirclePoint{0.0}).pass);

  SECTION("two entries of 1/2: both sides log 3") {
    const Potential f({{0, Complex(0.5, 0.0)}, {1, Complex(0.5, 0.0)}});
    const auto rep = v1_identity(f, CirclePoint{2.2});
    CHECK(rep.pass);
    CHECK(rep.lhs == Catch::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(rep.rhs == Catch::Approx(std::log(3.0)).epsilon(1e-12));
  }

  SECTION("seeded ensemble across a grid") {
    // radius 0.6: past ~0.7 the products grow enough that forming
    // gamma_M^{-1} gamma_N cancels below the 1e-10 identity tolerance
    EnsembleConfig cfg;
    cfg.seed = 39;
    cfg.trials = 25;
    cfg.radius = 0.6;
    for (const auto& rep : run_verify_v1(cfg, 64)) REQUIRE(rep.pass);
  }
}

TEST_CASE("group-vs-algebra variation comparisons") {
  const Complex c(0.44, -0.3);
  const double mod = std::abs(c);

  SECTION("single-entry closed forms") {
    const Potential f({{0, c}});
    const CirclePoint z{0.6};
    const auto fwd = prop21_check(f, z, 1.5);
    const double vg = 0.5 * std::log((1.0 + mod) / (1.0 - mod));
    CHECK(fwd.lhs == Catch::Approx(vg - mod).epsilon(1e-10));
    CHECK(fwd.lhs > 0.0);
    CHECK(fwd.rhs > 0.0);
    CHECK(std::isfinite(fwd.ratio));
    CHECK(fwd.pass);

    const auto rev = cor22_check(f, z, 1.5);
    CHECK(rev.lhs == Catch::Approx(mod - vg).epsilon(1e-10));
    CHECK(rev.lhs < 0.0);  // |c| <= log((1+|c|)/(1-|c|))/2
    CHECK(rev.ratio == 0.0);
    CHECK(rev.pass);
  }

  SECTION("zero potential passes with zero budget") {
    CHECK(prop21_check(Potential{}, CirclePoint{0.0}, 1.2).pass);
    CHECK(cor22_check(Potential{}, CirclePoint{0.0}, 1.2).pass);
  }

  SECTION("exponent validation") {
    CHECK_THROWS_AS(prop21_check(kSingle06, CirclePoint{0.0}, 2.0), BadExponent);
    CHECK_THROWS_AS(cor22_check(kSingle06, CirclePoint{0.0}, 0.9), BadExponent);
  }

  SECTION("small ensembles have finite ratios") {
    EnsembleConfig cfg;
    cfg.seed = 41;
    cfg.trials = 20;
    cfg.Q = 64;
    const auto rows_fwd = run_prop21_ensemble(cfg, 1.5);
    const auto rows_rev = run_cor22_ensemble(cfg, 1.5);
    const auto s_fwd = summarize(rows_fwd);
    const auto s_rev = summarize(rows_rev);
    CHECK(s_fwd.all_pass);
    CHECK(s_rev.all_pass);
    CHECK(std::isfinite(s_fwd.max_ratio));
    CHECK(std::isfinite(s_rev.max_ratio));
  }
}

TEST_CASE("large jump set") {
  SECTION("zero potential: empty and vacuous") {
    const auto res = large_jump_set(Potential{}, 0.5);
    CHECK(res.indices.empty());
    CHECK(res.bound_ok);
  }

  SECTION("dirichlet M = 2 at delta = 1/2") {
    const auto res = large_jump_set(dirichlet_potential(2), 0.5, 1.0);
    CHECK(res.indices == std::vector<int>{-2, -1, 0, 1, 2});
    CHECK(res.bound == Catch::Approx(10.0));
    CHECK(res.bound_ok);
  }

  SECTION("seeded ensemble keeps the bound strict") {
    for (int trial = 0; trial < 200; ++trial) {
      const Potential f = random_potential(trial_seed(43, trial), -8, 7, 0.9);
      for (double delta : {0.1, 0.5, 0.9})
        for (double r : {1.0, 1.5})
          CHECK(large_jump_set(f, delta, r).bound_ok);
    }
  }
}

TEST_CASE("variational MPZ ratio") {
  CHECK(mpz_ratio(Potential{}, 1.5, 1.8, 16).lhs == 0.0);
  CHECK_THROWS_AS(mpz_ratio(kSingle06, 2.0, 2.5, 16), BadExponent);
  CHECK_THROWS_AS(mpz_ratio(kSingle06, 1.5, 1.2, 16), BadExponent);

  SECTION("single entry: V_r(sigma) is |c| at every z, ratio 1") {
    for (auto [p, r] : {std::pair{1.0, 1.0}, std::pair{1.5, 1.8}, std::pair{1.2, 2.5}}) {
      const auto rep = mpz_ratio(kSingle06, p, r, 64);
      CHECK(rep.ratio == Catch::Approx(1.0).epsilon(1e-12));
      CHECK(rep.pass);
    }
  }

  SECTION("p = r = 1 is an equality") {
    for (int trial = 0; trial < 25; ++trial) {
      const Potential f = random_potential(trial_seed(45, trial), -8, 7, 0.9);
      const auto rep = mpz_ratio(f, 1.0, 1.0, 1 << 10);
      REQUIRE(rep.pass);
      CHECK(std::abs(rep.lhs - rep.rhs) <= 1e-9);
    }
  }

  SECTION("lemma constant holds at (1.5, 1.8)") {
    const double constant = 2.0 / (std::pow(2.0, 1.0 / 1.5 - 1.0 / 1.8) - 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      const Potential f = random_potential(trial_seed(47, trial), -8, 7, 0.9);
      const auto rep = mpz_ratio(f, 1.5, 1.8, 1 << 9);
      REQUIRE(rep.pass);
      CHECK(rep.ratio <= constant);
    }
  }
}

TEST_CASE("sharpness of the endpoint growth") {
  CHECK_THROWS_AS(sharpness_series(1.0, {4, 8}, 64), BadExponent);

  const auto series = sharpness_series(1.5, {4, 8, 16, 32}, 256);
  REQUIRE(series.points.size() == 4);
  for (std::size_t i = 1; i < series.points.size(); ++i)
    CHECK(series.points[i].ratio > series.points[i - 1].ratio);
}

TEST_CASE("dyadic mass decomposition") {
  SECTION("eight equal atoms split exactly") {
    std::vector<Potential::Entry> entries;
    for (int n = 0; n < 8; ++n) entries.push_back({n, Complex(0.5, 0.0)});
    const Potential f(std::move(entries));
    const auto dec = ck_decompose(f, 1.5, 3);
    REQUIRE(dec.levels.size() == 3);
    for (int n = 1; n <= 3; ++n) {
      const auto& level = dec.levels[static_cast<std::size_t>(n - 1)];
      REQUIRE(static_cast<int>(level.size()) == (1 << n));
      const int width = 8 >> n;
      for (int k = 0; k < (1 << n); ++k) {
        CHECK(level[static_cast<std::size_t>(k)].first == k * width);
        CHECK(level[static_cast<std::size_t>(k)].second == (k + 1) * width);
      }
    }
  }

  SECTION("single atom: every interval empty or the whole support") {
    const auto dec = ck_decompose(kSingle06, 1.5, 4);
    for (const auto& level : dec.levels)
      for (const auto& [b, e] : level) CHECK((b == e || (b == 0 && e == 1)));
  }

  SECTION("random masses: partition, refinement, mass bound") {
    for (int trial = 0; trial < 50; ++trial) {
      const Potential f = random_potential(trial_seed(49, trial), -8, 7, 0.9);
      const double p = 1.5;
      const auto dec = ck_decompose(f, p, 10);
      const int m = static_cast<int>(f.size());
      const double max_atom = dec.max_atom();
      for (int n = 1; n <= dec.depth; ++n) {
        const auto& level = dec.levels[static_cast<std::size_t>(n - 1)];
        int cursor = 0;
        double bound = dec.total_mass / std::pow(2.0, n) + max_atom + 1e-12;
        for (const auto& [b, e] : level) {
          REQUIRE(b == cursor);  // consecutive: a partition of the support
          cursor = e;
          double mass = 0.0;
          for (int j = b; j < e; ++j) mass += dec.atom_mass[static_cast<std::size_t>(j)];
          CHECK(mass <= bound);
        }
        REQUIRE(cursor == m);
        if (n > 1) {
          // every boundary of the coarser level reappears one level down
          const auto& prev = dec.levels[static_cast<std::size_t>(n - 2)];
          std::size_t j = 0;
          for (const auto& [pb, pe] : prev) {
            bool found = false;
            for (; j < level.size(); ++j)
              if (level[j].second == pe) {
                found = true;
                break;
              }
            REQUIRE(found);
          }
        }
      }
    }
  }

  SECTION("errors") {
    CHECK_THROWS_AS(ck_decompose(Potential{}, 1.5, 4), EmptyPotential);
    CHECK_THROWS_AS(ck_decompose(kSingle06, 1.5, 0), TooLarge);
    CHECK_THROWS_AS(ck_decompose(kSingle06, 1.5, 21), TooLarge);
  }
}

TEST_CASE("dyadic majorization chain") {
  CHECK_THROWS_AS(ck_bound_check(kSingle06, 1.5, 3.5, 64), BadExponent);

  SECTION("single atom: ratio 1 under the corrected constant") {
    const auto rep = ck_bound_check(kSingle06, 1.5, 1.8, 64, 4);
    CHECK(rep.pass);
    CHECK(rep.ratio == Catch::Approx(1.0).epsilon(1e-12));
  }

  SECTION("seeded ensemble at (1.5, 1.8)") {
    for (int trial = 0; trial < 20; ++trial) {
      const Potential f = random_potential(trial_seed(51, trial), -8, 7, 0.9);
      const auto rep = ck_bound_check(f, 1.5, 1.8, 256, 10);
      REQUIRE(rep.pass);
    }
  }
}

TEST_CASE("two-regime bound of the main estimate") {
  SECTION("zero potential: S is the whole circle, 0 = 0") {
    const auto rep = theorem_sides(Potential{}, 1.5, 1.8, 16);
    CHECK(rep.pass);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.rhs == 0.0);
  }

  SECTION("p = r = 1 ratio stays below 1") {
    for (int trial = 0; trial < 10; ++trial) {
      const Potential f = random_potential(trial_seed(53, trial), -8, 7, 0.9);
      const auto rep = theorem_sides(f, 1.0, 1.0, 256);
      REQUIRE(rep.pass);
      CHECK(rep.ratio <= 1.0 + 1e-10);
    }
  }

  SECTION("s switches to (p+2)/2 when r >= 2") {
    const Potential f = random_potential(55, -4, 3, 0.9);
    const auto rep = theorem_sides(f, 1.2, 2.5, 64);
    CHECK(rep.metadata.at("s") == float17(1.6));
    CHECK(std::isfinite(rep.ratio));
  }

  CHECK_THROWS_AS(theorem_sides(kSingle06, 1.5, 1.2, 16), BadExponent);
}

TEST_CASE("elementary inequality x <= log((1+x)/(1-x))/2") {
  for (int i = 0; i < 10000; ++i) {
    const double x = i / 10000.0;
    CHECK(x <= 0.5 * std::log((1.0 + x) / (1.0 - x)) + 1e-15);
  }
}

TEST_CASE("ensemble drivers are deterministic across thread counts") {
  EnsembleConfig cfg;
  cfg.seed = 57;
  cfg.trials = 8;
  cfg.Q = 32;
  std::vector<double> single, multi;
  for (unsigned threads : {1u, 4u}) {
    std::vector<double> out(static_cast<std::size_t>(cfg.Q));
    parallel_for(static_cast<std::size_t>(cfg.Q),
                 [&](std::size_t j) {
                   const Potential f = ensemble_potential(cfg, static_cast<int>(j % 4));
                   out[j] = variation(sigma_curve(f, CirclePoint{0.1 * j}), {1.3}).value;
                 },
                 threads);
    (threads == 1u ? single : multi) = out;
  }
  REQUIRE(single == multi);
}
