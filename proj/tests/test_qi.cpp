#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qimet/generators.hpp"
#include "qimet/gh_distance.hpp"
#include "qimet/propsuite.hpp"
#include "qimet/qi_distance.hpp"
#include "qimet/rng.hpp"

using namespace qimet;

TEST_CASE("verify_qi basics") {
  const auto X = random_space(4, 7);
  CHECK(qi::verify_qi(MapPair::identity(4), QiParams(1, 0, 0), X, X));

  // Huge constants make every constraint vacuous.
  SplitMix64 rng(19);
  const auto Y = random_space(3, 11);
  const auto mp = propsuite::random_map_pair(rng, 4, 3);
  const double big = X.diameter() + Y.diameter();
  CHECK(qi::verify_qi(mp, QiParams(100.0, big, big), X, Y));

  CHECK_THROWS_AS(qi::verify_qi(mp, QiParams(1, 0, 0), Y, X), SizeMismatch);
}

TEST_CASE("min_r closed forms") {
  const auto X = random_space(4, 13);
  CHECK(qi::min_r_for_pair(MapPair::identity(4), X, X) == 0.0);

  // Two-point spaces at 1 and 2 under the identity pairing: the binding
  // constraint is the upper embedding bound, r = (2 - 1)/(1 + 1).
  CHECK(qi::min_r_for_pair(MapPair::identity(2), gen_two_point(1.0), gen_two_point(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Identity f with swapped g on a two-point space at 0.3: only the
  // closeness constraints bite, each with displacement 0.3.
  const auto P = gen_two_point(0.3);
  const MapPair mixed{{0, 1}, {1, 0}};
  CHECK(qi::min_r_for_pair(mixed, P, P) == doctest::Approx(0.3).epsilon(1e-12));

  // Index map between {0, 1.2, 2.4} and {0, 1, 2}: minimal (1+r, r, r)
  // parameters stay below 0.4.
  const auto scaled = gen_scaled_lattice(1.2, 3);
  const auto unit = gen_scaled_lattice(1.0, 3);
  const double r = qi::min_r_for_pair(MapPair::identity(3), scaled, unit);
  CHECK(r <= 0.4);
  CHECK(qi::verify_qi(MapPair::identity(3), QiParams(1.0 + r, r, r), scaled, unit, 1e-12));
}

TEST_CASE("min_r agrees with the feasibility bisection oracle") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto X = random_space(2 + rng.below(4), rng.next());
    const auto Y = random_space(2 + rng.below(4), rng.next());
    const auto mp = propsuite::random_map_pair(rng, X.size(), Y.size());
    const double closed = qi::min_r_for_pair(mp, X, Y);
    const double oracle = propsuite::oracle_min_r_bisect(mp, X, Y, 1e-12);
    CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("qhat basics") {
  const auto X = random_space(4, 37);
  CHECK(qi::qhat_exact(X, X) == 0.0);

  // Two-point spaces at 1 and 1 + eps: the identity pairing certifies
  // qhat <= eps.
  const double eps = 0.25;
  CHECK(qi::qhat_exact(gen_two_point(1.0), gen_two_point(1.0 + eps)) <= eps);

  SplitMix64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto A = random_space(2 + rng.below(3), rng.next());
    const auto B = random_space(2 + rng.below(3), rng.next());
    CHECK(qi::qhat_exact(A, B) == qi::qhat_exact(B, A));
  }
}

TEST_CASE("scaled lattice truncations") {
  // Index pairing between alpha Z and Z on [0, L]: r is bounded by
  // |1 - alpha| L / (1 + min gap).
  const double alpha = 1.05;
  const std::size_t count = 4;
  const double L = static_cast<double>(count - 1);
  const auto scaled = gen_scaled_lattice(alpha, count);
  const auto unit = gen_scaled_lattice(1.0, count);
  const double qhat = qi::qhat_exact(scaled, unit);
  CHECK(qhat <= std::abs(1.0 - alpha) * L / 2.0 + 1e-12);
  CHECK(qhat <= qi::min_r_for_pair(MapPair::identity(count), scaled, unit) + 1e-15);
}

TEST_CASE("qhat search is deterministic and an upper bound") {
  const auto X = random_space(4, 51);
  const auto Y = random_space(4, 52);
  search::SearchBudget budget;
  budget.max_evaluations = 2000;
  budget.restarts = 6;
  budget.rng_seed = 9;
  const auto a = qi::qhat_search(X, Y, budget);
  const auto b = qi::qhat_search(X, Y, budget);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_witness == b.best_witness);
  CHECK(a.best_value >= qi::qhat_exact(X, Y) - 1e-15);

  // On the identity instance the annealer reaches the zero optimum.
  const auto Z = random_space(3, 53);
  CHECK(qi::qhat_search(Z, Z, budget).best_value == 0.0);
}

TEST_CASE("qhat search calibration on 3x3 instances") {
  search::SearchBudget budget;
  budget.max_evaluations = 10'000;
  budget.restarts = 20;

  int hits = 0;
  SplitMix64 rng(2025);
  for (int instance = 0; instance < 100; ++instance) {
    const auto X = random_space(3, rng.next());
    const auto Y = random_space(3, rng.next());
    budget.rng_seed = rng.next();
    const auto approx = qi::qhat_search(X, Y, budget);
    const double exact = qi::qhat_exact(X, Y);
    CHECK(approx.best_value >= exact - 1e-15);
    if (approx.best_value <= exact + 1e-9) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("qhat certificate invariant") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const auto X = random_space(2 + rng.below(3), rng.next());
    const auto Y = random_space(2 + rng.below(3), rng.next());
    const auto cert = qi::qhat_certificate(X, Y);
    CHECK(qi::verify_qi(cert.mp, QiParams(1.0 + cert.r, cert.r, cert.r), X, Y, 1e-12));
    CHECK(cert.r == qi::qhat_exact(X, Y));
  }
}

TEST_CASE("compose_params follows the composition formula") {
  // (2,1,1) then (3,0,2): (2*3, 2*0 + 3*1, 2*2 + 3*1 + 1 + 0).
  const auto composed = qi::compose_params(QiParams(2, 1, 1), QiParams(3, 0, 2));
  CHECK(composed.A == 6.0);
  CHECK(composed.B == 3.0);
  CHECK(composed.C == 8.0);

  // The identity element property needs B = 0; with B > 0 the formula
  // deliberately inflates C by B.
  const auto kept = qi::compose_params(QiParams(2, 0, 1), QiParams(1, 0, 0));
  CHECK(kept.A == 2.0);
  CHECK(kept.B == 0.0);
  CHECK(kept.C == 1.0);
  const auto inflated = qi::compose_params(QiParams(2, 1, 1), QiParams(1, 0, 0));
  CHECK(inflated.C == 2.0);
}

TEST_CASE("composed constants certify composed maps") {
  propsuite::SuiteOptions opt;
  opt.trials = 10;
  opt.seed = 61;
  const auto report = propsuite::run_composition(opt);
  CHECK(report.failures == 0);
}

TEST_CASE("generalized triangle bound") {
  CHECK(qi::triangle_bound_qhat(0.0, 0.7) == 1.4);
  CHECK(qi::triangle_bound_qhat(1.0, 1.0) == 6.0);
  CHECK_THROWS_AS(qi::triangle_bound_qhat(-1.0, 0.0), BadParams);

  propsuite::SuiteOptions opt;
  opt.trials = 10;
  opt.seed = 62;
  const auto report = propsuite::run_qhat_triangle(opt);
  CHECK(report.failures == 0);
}

TEST_CASE("dense-embedding upgrade and the GH comparison") {
  const auto a = qi::upgrade_dense_embedding(2.0, 0.5, 0.0);
  CHECK(a.A == 2.0);
  CHECK(a.B == 0.5);
  CHECK(a.C == 0.5);

  // A 2eps-isometry is a (1, 2eps)-embedding with eps-dense image, giving
  // (1, 4eps, 3eps), hence qhat <= 4 gh.
  const double eps = 0.125;
  const auto b = qi::upgrade_dense_embedding(1.0, 2.0 * eps, eps);
  CHECK(b.A == 1.0);
  CHECK(b.B == 4.0 * eps);
  CHECK(b.C == 3.0 * eps);

  propsuite::SuiteOptions opt;
  opt.trials = 20;
  opt.seed = 63;
  const auto report = propsuite::run_gh_to_qi(opt);
  CHECK(report.failures == 0);
}

TEST_CASE("rho generalized metric") {
  CHECK(qi::rho(0.0) == 0.0);
  CHECK(qi::rho(std::exp(1.0) - 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(qi::rho(-0.1), BadParams);

  SplitMix64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const auto X = random_space(2 + rng.below(3), rng.next());
    const auto Y = random_space(2 + rng.below(3), rng.next());
    const auto Z = random_space(2 + rng.below(3), rng.next());
    const double xy = qi::rho(qi::qhat_exact(X, Y));
    const double yz = qi::rho(qi::qhat_exact(Y, Z));
    const double xz = qi::rho(qi::qhat_exact(X, Z));
    CHECK(xz <= xy + yz + 1e-9);
  }
}
