#pragma once

#include <string>
#include <vector>

#include "qimet/d_metric.hpp"
#include "qimet/gh_distance.hpp"
#include "qimet/interpolation.hpp"
#include "qimet/qi_distance.hpp"
#include "qimet/rng.hpp"

namespace qimet::propsuite {

/// Binary search on the q-dis feasibility predicate (both defining
/// inequalities checked directly for every pair of pairs); independent of
/// the closed-form path. The bracket starts at [0, 1] and the upper end
/// grows geometrically until feasible.
double oracle_qdis_bisect(const Correspondence& R, const FiniteMetricSpace& X,
                          const FiniteMetricSpace& Y, double tol = 1e-12);

/// Same bisection against the (1+r, r, r) quasi-isometry feasibility
/// predicate; oracle for min_r_for_pair.
double oracle_min_r_bisect(const MapPair& mp, const FiniteMetricSpace& X,
                           const FiniteMetricSpace& Y, double tol = 1e-12);

struct SuiteOptions {
  int trials = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::size_t min_points = 2;
  std::size_t max_points = 4;
  double lo = 0.5;
  double hi = 4.0;
  double slack = 0.0;   // post-repair inflation for random spaces
  std::uint64_t max_evals = search::kDefaultMaxEvals;
  int threads = 1;
  // path suite knobs
  int steps_per_family = 50;
  std::size_t partitions = 1024;
  double path_tol = 1e-6;
  double ratio_delta = 1e-5;
  double ratio_rel_tol = 0.01;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  int failures = 0;
  double worst_slack = 0.0;  // max of (lhs - rhs) over all checks; <= 0 is margin
  std::vector<std::string> notes;

  bool passed() const noexcept { return failures == 0; }
};

// Seeded random instances shared by the property suites.
FiniteMetricSpace random_space_in(SplitMix64& rng, const SuiteOptions& opt);
MapPair random_map_pair(SplitMix64& rng, std::size_t nX, std::size_t nY);
Correspondence random_correspondence(SplitMix64& rng, std::size_t nX, std::size_t nY);

// One runner per property family; all deterministic in SuiteOptions::seed.
SuiteReport run_oracle_qdis(const SuiteOptions& opt);         // closed form vs bisection
SuiteReport run_oracle_min_r(const SuiteOptions& opt);        // closed form vs bisection
SuiteReport run_reduction(const SuiteOptions& opt);           // map pairs vs subset enumeration
SuiteReport run_triangle_d(const SuiteOptions& opt);          // D triangle inequality
SuiteReport run_gh_triangle(const SuiteOptions& opt);         // GH triangle inequality
SuiteReport run_qhat_triangle(const SuiteOptions& opt);       // generalized triangle bound
SuiteReport run_bounds(const SuiteOptions& opt);              // D <-> qhat mutual bounds
SuiteReport run_gh_to_qi(const SuiteOptions& opt);            // qhat <= 4 gh
SuiteReport run_composition(const SuiteOptions& opt);         // composed constants certify
SuiteReport run_eps_iso(const SuiteOptions& opt);             // both eps-isometry directions
SuiteReport run_path(const SuiteOptions& opt);                // R_t endpoints/steps/length
SuiteReport run_qdis_subadditivity(const SuiteOptions& opt);  // q-dis under composition

}  // namespace qimet::propsuite
