#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qimet/generators.hpp"
#include "qimet/gh_distance.hpp"
#include "qimet/rng.hpp"
#include "qimet/search.hpp"

using namespace qimet;

TEST_CASE("map pair enumeration visits the predicted counts") {
  auto zero = [](const MapPair&) { return 0.0; };
  CHECK(search::enumerate_map_pairs(1, 1, zero).evaluations_used == 1);
  CHECK(search::enumerate_map_pairs(2, 2, zero).evaluations_used == 16);
  CHECK(search::enumerate_map_pairs(3, 3, zero).evaluations_used == 729);
  CHECK(search::enumerate_map_pairs(3, 3, zero).certified_exact);
  CHECK(search::map_pair_count(3, 3) == 729);
}

TEST_CASE("map pair enumeration finds the exact minimum") {
  // Score counts nonzero entries; the all-zero configuration is optimal.
  auto weight = [](const MapPair& mp) {
    double total = 0.0;
    for (auto v : mp.f) total += v;
    for (auto v : mp.g) total += v;
    return total;
  };
  const auto result = search::enumerate_map_pairs(3, 4, weight);
  CHECK(result.best_value == 0.0);
  for (auto v : result.best_witness.f) CHECK(v == 0);
  for (auto v : result.best_witness.g) CHECK(v == 0);
}

TEST_CASE("map pair enumeration budget") {
  auto zero = [](const MapPair&) { return 0.0; };
  CHECK_THROWS_AS(search::enumerate_map_pairs(6, 6, zero), BudgetExceeded);
  try {
    search::enumerate_map_pairs(6, 6, zero);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == 2176782336ULL);  // 6^6 * 6^6
    CHECK(e.cap() == search::kDefaultMaxEvals);
  }
}

TEST_CASE("parallel enumeration matches sequential") {
  const auto X = random_space(3, 3);
  const auto Y = random_space(4, 4);
  auto score = [&](const MapPair& mp) { return gh::map_pair_dis(mp, X, Y); };
  const auto seq = search::enumerate_map_pairs(3, 4, score, search::kDefaultMaxEvals, 1);
  const auto par = search::enumerate_map_pairs(3, 4, score, search::kDefaultMaxEvals, 4);
  CHECK(seq.best_value == par.best_value);
  CHECK(seq.best_witness == par.best_witness);
  CHECK(seq.evaluations_used == par.evaluations_used);
}

TEST_CASE("correspondence enumeration counts") {
  auto zero = [](const Correspondence&) { return 0.0; };
  CHECK(search::enumerate_correspondences(1, 1, zero).evaluations_used == 1);
  // Full projection forces both pairs of the 1x2 grid.
  const auto r12 = search::enumerate_correspondences(1, 2, zero);
  CHECK(r12.evaluations_used == 1);
  CHECK(r12.best_witness.size() == 2);
  CHECK(search::enumerate_correspondences(2, 2, zero).evaluations_used == 7);
  CHECK_THROWS_AS(search::enumerate_correspondences(6, 6, zero), BudgetExceeded);
}

TEST_CASE("local search is deterministic and bounded below by the optimum") {
  const auto X = random_space(3, 101);
  const auto Y = random_space(3, 202);
  auto score = [&](const MapPair& mp) { return gh::map_pair_dis(mp, X, Y); };

  search::SearchBudget budget;
  budget.max_evaluations = 500;
  budget.restarts = 4;
  budget.rng_seed = 12345;

  const auto a = search::local_search_map_pairs(3, 3, score, budget);
  const auto b = search::local_search_map_pairs(3, 3, score, budget);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_witness == b.best_witness);
  CHECK(a.evaluations_used == b.evaluations_used);
  CHECK(a.evaluations_used == 2000);
  CHECK(!a.certified_exact);

  budget.rng_seed = 999;
  const auto c = search::local_search_map_pairs(3, 3, score, budget);
  const auto exact = search::enumerate_map_pairs(3, 3, score);
  CHECK(a.best_value >= exact.best_value);
  CHECK(c.best_value >= exact.best_value);

  // Restart waves reduce in a fixed order: thread count cannot change results.
  const auto par = search::local_search_map_pairs(3, 3, score, budget, 4);
  CHECK(par.best_value == c.best_value);
  CHECK(par.best_witness == c.best_witness);
}

TEST_CASE("annealing calibration on 3x3 instances") {
  // 20 restarts x 10^4 evaluations recover the exact optimum on at least
  // 95 of 100 seeded instances.
  search::SearchBudget budget;
  budget.max_evaluations = 10'000;
  budget.restarts = 20;

  int hits = 0;
  SplitMix64 rng(2024);
  for (int instance = 0; instance < 100; ++instance) {
    const auto X = random_space(3, rng.next());
    const auto Y = random_space(3, rng.next());
    auto score = [&](const MapPair& mp) { return gh::map_pair_dis(mp, X, Y); };
    budget.rng_seed = rng.next();
    const auto approx = search::local_search_map_pairs(3, 3, score, budget);
    const auto exact = search::enumerate_map_pairs(3, 3, score);
    CHECK(approx.best_value >= exact.best_value - 1e-15);
    if (approx.best_value <= exact.best_value + 1e-9) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("budget validation") {
  search::SearchBudget budget;
  budget.cooling_rate = 1.0;
  CHECK_THROWS_AS(budget.validate(), BadParams);
  budget.cooling_rate = 0.99;
  budget.restarts = 0;
  CHECK_THROWS_AS(budget.validate(), BadParams);
  budget.restarts = 1;
  budget.max_evaluations = 0;
  CHECK_THROWS_AS(budget.validate(), BadParams);
}
