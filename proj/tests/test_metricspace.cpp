#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qimet/generators.hpp"
#include "qimet/metric_space.hpp"

using namespace qimet;

namespace {

bool has_violation(const MetricValidationError& e, ViolationKind kind) {
  for (const auto& v : e.violations())
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("smallest metric space validates") {
  const auto s = validate({{0, 1}, {1, 0}});
  CHECK(s.size() == 2);
  CHECK(s.dist(0, 1) == 1.0);
  CHECK(s.labels()[0] == "p0");
}

TEST_CASE("asymmetric matrix is rejected") {
  CHECK_THROWS_AS(validate({{0, 1}, {2, 0}}), MetricValidationError);
  try {
    validate({{0, 1}, {2, 0}});
  } catch (const MetricValidationError& e) {
    CHECK(has_violation(e, ViolationKind::AsymmetricMatrix));
  }
}

TEST_CASE("triangle violation reports the triple") {
  try {
    validate({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("expected a validation error");
  } catch (const MetricValidationError& e) {
    bool found = false;
    for (const auto& v : e.violations()) {
      CHECK(v.kind == ViolationKind::TriangleViolation);
      // dist(0,2) = 3 > dist(0,1) + dist(1,2) = 2
      if (v.i == 0 && v.j == 2 && v.k == 1) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("negative entries and zero off-diagonals are rejected") {
  try {
    validate({{0, -1}, {-1, 0}});
    FAIL("expected a validation error");
  } catch (const MetricValidationError& e) {
    CHECK(has_violation(e, ViolationKind::NegativeEntry));
  }

  try {
    validate({{0, 0}, {0, 0}});
    FAIL("expected a validation error");
  } catch (const MetricValidationError& e) {
    CHECK(has_violation(e, ViolationKind::ZeroOffDiagonal));
  }

  // The pseudometric variant accepts the zero pair.
  CHECK_NOTHROW(PseudoMetricSpace::validated({{0, 0}, {0, 0}}));
}

TEST_CASE("non-square and non-finite input") {
  CHECK_THROWS_AS(validate({{0, 1}}), MetricValidationError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate({{0, inf}, {inf, 0}}), MetricValidationError);
}

TEST_CASE("validation tolerance absorbs tiny triangle slack") {
  // 2.0000000001 > 1 + 1 by 1e-10, below the default tolerance.
  CHECK_NOTHROW(validate({{0, 1, 2.0000000001}, {1, 0, 1}, {2.0000000001, 1, 0}}));
  CHECK_THROWS_AS(validate({{0, 1, 2.0000000001}, {1, 0, 1}, {2.0000000001, 1, 0}}, 1e-12),
                  MetricValidationError);
}

TEST_CASE("quotient merges zero classes") {
  const auto p = PseudoMetricSpace::validated({{0, 0, 5}, {0, 0, 5}, {5, 5, 0}});
  const auto q = quotient(p);
  CHECK(q.size() == 2);
  CHECK(q.dist(0, 1) == 5.0);
  CHECK(q.labels()[0] == "p0+p1");
  CHECK(q.labels()[1] == "p2");
}

TEST_CASE("quotient is the identity without zero pairs") {
  const auto p = PseudoMetricSpace::validated({{0, 2, 3}, {2, 0, 4}, {3, 4, 0}});
  const auto q = quotient(p);
  CHECK(q.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(q.dist(i, j) == p.dist(i, j));
}

TEST_CASE("quotient is idempotent") {
  const auto p = PseudoMetricSpace::validated({{0, 0, 1, 4}, {0, 0, 1, 4}, {1, 1, 0, 3}, {4, 4, 3, 0}});
  const auto once = quotient(p);
  const auto twice = quotient(PseudoMetricSpace::validated(once.rows(), once.labels()));
  REQUIRE(twice.size() == once.size());
  for (std::size_t i = 0; i < once.size(); ++i)
    for (std::size_t j = 0; j < once.size(); ++j)
      CHECK(twice.dist(i, j) == once.dist(i, j));
}

TEST_CASE("diameter") {
  CHECK(gen_two_point(3.0).diameter() == 3.0);
  CHECK(validate({{0.0}}).size() == 1);
  CHECK(validate({{0.0}}).diameter() == 0.0);
  const std::size_t k = 6;
  CHECK(gen_scaled_lattice(1.0, k + 1).diameter() == static_cast<double>(k));
}

TEST_CASE("pointed space checks the base index") {
  const auto s = gen_two_point(1.0);
  CHECK_NOTHROW(PointedSpace(s, 1));
  CHECK_THROWS_AS(PointedSpace(s, 2), OutOfRange);
}
