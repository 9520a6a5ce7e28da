#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nlft/checks.hpp>
#include <nlft/curve.hpp>
#include <nlft/rng.hpp>
#include <nlft/su11.hpp>

#include "support/oracles.hpp"

using namespace nlft;

namespace {

GroupElement random_group(CounterRng& rng, double scale = 1.0) {
  const AlgebraElement x{scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0),
                         scale * rng.uniform(-1.0, 1.0)};
  return exp_alg(x);
}

AlgebraElement random_algebra(CounterRng& rng, double scale = 1.0) {
  return {scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0),
          scale * rng.uniform(-1.0, 1.0)};
}

}  // namespace

TEST_CASE("group multiplication matches the dense 2x2 product") {
  const GroupElement e;
  const GroupElement x{Complex(2.0 / std::sqrt(3.0), 0.0), Complex(1.0 / std::sqrt(3.0), 0.0)};

  SECTION("identity cases") {
    const GroupElement xe = multiply(x, e);
    CHECK(xe.a == x.a);
    CHECK(xe.b == x.b);
    const GroupElement ex = multiply(e, x);
    CHECK(ex.a == x.a);
    CHECK(ex.b == x.b);
  }

  SECTION("equal-phase transfer pair gives (5/3, 4/3)") {
    const GroupElement p = multiply(x, x);
    CHECK(std::abs(p.a - Complex(5.0 / 3.0, 0.0)) < 1e-14);
    CHECK(std::abs(p.b - Complex(4.0 / 3.0, 0.0)) < 1e-14);
  }

  SECTION("random products against the oracle") {
    CounterRng rng(2024, 1);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const GroupElement u = random_group(rng);
      const GroupElement v = random_group(rng);
      const GroupElement w = multiply(u, v);
      const auto direct = oracles::mul(oracles::from_group(u), oracles::from_group(v));
      worst = std::max(worst, oracles::max_abs_diff(direct, oracles::from_group(w)));
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("inverse") {
  const GroupElement e;
  const GroupElement ie = inverse(e);
  CHECK(ie.a == e.a);
  CHECK(ie.b == e.b);

  const GroupElement x{Complex(2.0 / std::sqrt(3.0), 0.0), Complex(1.0 / std::sqrt(3.0), 0.0)};
  const GroupElement ix = inverse(x);
  CHECK(ix.a == x.a);
  CHECK(ix.b == -x.b);
  CHECK(op_norm(multiply(x, ix).pair() - pair_identity()) < 1e-15);

  CounterRng rng(7, 2);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const GroupElement u = random_group(rng);
    worst = std::max(worst, op_norm(multiply(u, inverse(u)).pair() - pair_identity()));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("operator norm equals the largest singular value") {
  CHECK(op_norm(pair_identity()) == 1.0);
  CHECK(op_norm(HermitianPair{Complex(0.0, 0.0), Complex(0.3, 0.4)}) == Catch::Approx(0.5));
  // [[i, 1], [1, -i]]
  CHECK(op_norm(HermitianPair{Complex(0.0, 1.0), Complex(1.0, 0.0)}) == Catch::Approx(2.0));
  CHECK(oracles::svd_max(oracles::from_pair({Complex(0.0, 1.0), Complex(1.0, 0.0)})) ==
        Catch::Approx(2.0));

  CounterRng rng(11, 3);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const HermitianPair m{Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)),
                          Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))};
    worst = std::max(worst, std::abs(op_norm(m) - oracles::svd_max(oracles::from_pair(m))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("algebra norm") {
  CHECK(alg_norm(AlgebraElement{}) == 0.0);
  CHECK(alg_norm(AlgebraElement{0.0, 3.0, 4.0}) == Catch::Approx(5.0));
  CHECK(alg_norm(AlgebraElement{1.0, 1.0, 0.0}) == Catch::Approx(2.0));

  CounterRng rng(13, 4);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const AlgebraElement x = random_algebra(rng, 2.0);
    worst = std::max(worst,
                     std::abs(alg_norm(x) - oracles::svd_max(oracles::from_algebra(x))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("metric") {
  const GroupElement t = transfer_matrix(Complex(0.5, 0.0), 0, CirclePoint{0.0});

  SECTION("examples") {
    CHECK(distance(t, t) == 0.0);
    // d(I, T_0) with F_0 = 1/2 is half of log 3
    CHECK(distance(GroupElement{}, t) == Catch::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
  }

  SECTION("axioms over seeded triples") {
    CounterRng rng(17, 5);
    double worst_triangle = 0.0;
    double worst_symmetry = 0.0;
    double min_distinct = 1e300;
    bool zero_on_diagonal = true;
    for (int i = 0; i < 1000; ++i) {
      const GroupElement x = random_group(rng);
      const GroupElement y = random_group(rng);
      const GroupElement z = random_group(rng);
      const double dxy = distance(x, y);
      const double dyz = distance(y, z);
      const double dxz = distance(x, z);
      REQUIRE(dxy >= 0.0);
      worst_triangle = std::max(worst_triangle, dxz - (dxy + dyz));
      worst_symmetry = std::max(worst_symmetry, std::abs(dxy - distance(y, x)));
      min_distinct = std::min(min_distinct, dxy);
      zero_on_diagonal = zero_on_diagonal && distance(x, x) == 0.0;
    }
    CHECK(worst_triangle <= 1e-12);
    // symmetry holds empirically: ||Z - I|| = ||Z^{-1} - I|| on this class
    CHECK(worst_symmetry <= 1e-12);
    CHECK(min_distinct > 1e-8);  // identity of indiscernibles on random pairs
    CHECK(zero_on_diagonal);
  }
}

TEST_CASE("exponential") {
  SECTION("fixed cases") {
    const GroupElement e = exp_alg(AlgebraElement{});
    CHECK(e.a == Complex(1.0, 0.0));
    CHECK(e.b == Complex(0.0, 0.0));

    const GroupElement hs = exp_alg(AlgebraElement{0.0, 0.7, 0.0});
    CHECK(std::abs(hs.a - Complex(std::cosh(0.7), 0.0)) < 1e-12);
    CHECK(std::abs(hs.b - Complex(std::sinh(0.7), 0.0)) < 1e-12);

    const GroupElement rot = exp_alg(AlgebraElement{0.9, 0.0, 0.0});
    CHECK(std::abs(rot.a - std::polar(1.0, 0.9)) < 1e-15);
    CHECK(std::abs(rot.b) == 0.0);
  }

  SECTION("series oracle and determinant") {
    CounterRng rng(19, 6);
    double worst = 0.0;
    double worst_det = 0.0;
    for (int i = 0; i < 4000; ++i) {
      const AlgebraElement x = random_algebra(rng, 1.5);
      const GroupElement g = exp_alg(x);
      worst = std::max(worst, oracles::max_abs_diff(oracles::exp_series(oracles::from_algebra(x)),
                                                    oracles::from_group(g)));
      worst_det = std::max(worst_det, determinant_defect(g));
    }
    CHECK(worst <= 1e-12);
    CHECK(worst_det <= 1e-13);
  }

  SECTION("series branch near delta = 0") {
    CounterRng rng(23, 7);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      // r close to hypot(s, t) makes delta tiny without making X small
      const double s = rng.uniform(-0.8, 0.8);
      const double t = rng.uniform(-0.8, 0.8);
      const double eps = rng.uniform(-1e-5, 1e-5);
      const AlgebraElement x{std::hypot(s, t) + eps, s, t};
      worst = std::max(worst, oracles::max_abs_diff(oracles::exp_series(oracles::from_algebra(x)),
                                                    oracles::from_group(exp_alg(x))));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("principal logarithm") {
  SECTION("log of the identity is zero") {
    const AlgebraElement x = log_group(GroupElement{});
    CHECK(x.r == 0.0);
    CHECK(x.s == 0.0);
    CHECK(x.t == 0.0);
  }

  SECTION("round trips on the small-norm region") {
    CounterRng rng(29, 8);
    double worst_alg = 0.0;
    double worst_grp = 0.0;
    for (int i = 0; i < 4000; ++i) {
      AlgebraElement x = random_algebra(rng);
      const double n = alg_norm(x);
      if (n > 0.3) x = (0.3 * rng.uniform() / n) * x;
      worst_alg = std::max(worst_alg, alg_norm(log_group(exp_alg(x)) - x));

      const GroupElement g = exp_alg(random_algebra(rng, 0.12));
      if (op_norm(g.pair() - pair_identity()) <= 0.3) {
        const GroupElement h = exp_alg(log_group(g));
        worst_grp = std::max(worst_grp, op_norm(h.pair() - g.pair()));
      }
    }
    CHECK(worst_alg <= 1e-11);
    CHECK(worst_grp <= 1e-11);
  }

  SECTION("one-step transfer log is g(F) times the algebra increment") {
    CounterRng rng(31, 9);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double mod = 0.55 * rng.uniform();
      const Complex fn = std::polar(mod, rng.uniform() * 2.0 * M_PI);
      const CirclePoint z{rng.uniform() * 2.0 * M_PI};
      const int n = static_cast<int>(rng.uniform(-20.0, 20.0));
      const AlgebraElement lg = log_group(transfer_matrix(fn, n, z));
      const Complex w = fn * z.z_pow(n);
      const AlgebraElement expected = g_function(mod) * AlgebraElement{0.0, w.real(), -w.imag()};
      worst = std::max(worst, alg_norm(lg - expected));
    }
    CHECK(worst <= 1e-12);
  }

  SECTION("domain errors") {
    // |F| = 0.7 puts the transfer matrix at distance > 1 from the identity
    CHECK_THROWS_AS(log_group(transfer_matrix(Complex(0.7, 0.0), 0, CirclePoint{0.0})),
                    OutOfDomain);
  }
}

TEST_CASE("short group and algebra distances agree quadratically") {
  CounterRng rng(37, 10);
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    AlgebraElement x = random_algebra(rng, 0.06);
    const double n = alg_norm(x);
    if (n == 0.0) continue;
    if (n > 0.1) x = (0.1 / n) * x;
    const double nn = alg_norm(x);
    const double d = distance(GroupElement{}, exp_alg(x));
    worst = std::max(worst, std::abs(d - nn) - 2.0 * nn * nn);
  }
  CHECK(worst <= 0.0);
}

TEST_CASE("determinant preservation along long products") {
  // The absolute 1e-9 defect bound is only representable while |a| stays
  // below ~1e3: a stored element cannot know its determinant better than
  // eps * |a|^2. The long chain therefore runs at small radius and the
  // radius-0.9 chain at desk-scale support.
  SECTION("10^4 factors, radius 0.03") {
    const Potential f = random_potential(41, -5000, 4999, 0.03);
    const auto curve = gamma_curve(f, CirclePoint{1.234});
    double worst = 0.0;
    for (const auto& g : curve.samples) worst = std::max(worst, determinant_defect(g));
    CHECK(worst <= 1e-9);
  }

  SECTION("desk scale, radius 0.9: defect bounded by the representation floor") {
    // |a| reaches ~1e4 here, so the defect floor eps * |a|^2 can exceed
    // 1e-9; the bound asserted is the one double precision can deliver.
    double worst_excess = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const Potential f = random_potential(trial_seed(43, trial), -8, 7, 0.9);
      const auto curve = gamma_curve(f, CirclePoint{0.377 * trial});
      for (const auto& g : curve.samples) {
        const double floor =
            std::max(1e-9, 64.0 * 2.22e-16 * (std::norm(g.a) + std::norm(g.b)));
        worst_excess = std::max(worst_excess, determinant_defect(g) - floor);
      }
    }
    CHECK(worst_excess <= 0.0);
  }
}
