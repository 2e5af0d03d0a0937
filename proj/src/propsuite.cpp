#include "qimet/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qimet/generators.hpp"

namespace qimet::propsuite {

namespace {

double bisect_feasibility(const std::function<bool(double)>& feasible, double tol) {
  if (feasible(0.0)) return 0.0;
  double hi = 1.0;
  while (!feasible(hi)) hi *= 2.0;
  double lo = hi > 1.0 ? hi * 0.5 : 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct TrialLog {
  SuiteReport report;

  explicit TrialLog(std::string name) {
    report.suite = std::move(name);
    report.worst_slack = -std::numeric_limits<double>::infinity();
  }

  /// Records one inequality check lhs <= rhs + tol.
  void check(double lhs, double rhs, double tol, const char* what, int trial) {
    report.worst_slack = std::max(report.worst_slack, lhs - rhs);
    if (!(lhs <= rhs + tol)) fail(what, trial, lhs, rhs);
  }

  void fail(const char* what, int trial, double lhs = 0.0, double rhs = 0.0) {
    ++report.failures;
    if (report.notes.size() < 5) {
      std::ostringstream msg;
      msg << "trial " << trial << ": " << what;
      if (lhs != 0.0 || rhs != 0.0) msg << " (lhs=" << lhs << ", rhs=" << rhs << ")";
      report.notes.push_back(msg.str());
    }
  }
};

std::size_t random_size(SplitMix64& rng, const SuiteOptions& opt) {
  return opt.min_points + rng.below(opt.max_points - opt.min_points + 1);
}

}  // namespace

FiniteMetricSpace random_space_in(SplitMix64& rng, const SuiteOptions& opt) {
  return random_space(random_size(rng, opt), rng.next(), opt.lo, opt.hi, opt.slack);
}

MapPair random_map_pair(SplitMix64& rng, std::size_t nX, std::size_t nY) {
  MapPair mp;
  mp.f.resize(nX);
  mp.g.resize(nY);
  for (auto& v : mp.f) v = static_cast<std::uint32_t>(rng.below(nY));
  for (auto& v : mp.g) v = static_cast<std::uint32_t>(rng.below(nX));
  return mp;
}

Correspondence random_correspondence(SplitMix64& rng, std::size_t nX, std::size_t nY) {
  // A union-form core keeps the projections surjective; extra cells thicken it.
  const MapPair core = random_map_pair(rng, nX, nY);
  std::vector<IndexPair> pairs;
  for (std::uint32_t i = 0; i < nX; ++i) pairs.push_back({i, core.f[i]});
  for (std::uint32_t j = 0; j < nY; ++j) pairs.push_back({core.g[j], j});
  for (std::uint32_t i = 0; i < nX; ++i)
    for (std::uint32_t j = 0; j < nY; ++j)
      if (rng.uniform() < 0.25) pairs.push_back({i, j});
  return Correspondence::from_pairs(nX, nY, std::move(pairs));
}

double oracle_qdis_bisect(const Correspondence& R, const FiniteMetricSpace& X,
                          const FiniteMetricSpace& Y, double tol) {
  const auto& pairs = R.pairs();
  auto feasible = [&](double r) {
    const double u = std::exp(r);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = p; q < pairs.size(); ++q) {
        const double a = X.dist(pairs[p].first, pairs[q].first);
        const double b = Y.dist(pairs[p].second, pairs[q].second);
        if (!(a <= u * b + u * u - u)) return false;
        if (!(b / u - u + 1.0 <= a)) return false;
      }
    return true;
  };
  return bisect_feasibility(feasible, tol);
}

double oracle_min_r_bisect(const MapPair& mp, const FiniteMetricSpace& X,
                           const FiniteMetricSpace& Y, double tol) {
  auto feasible = [&](double r) {
    return qi::verify_qi(mp, QiParams(1.0 + r, r, r), X, Y);
  };
  return bisect_feasibility(feasible, tol);
}

SuiteReport run_oracle_qdis(const SuiteOptions& opt) {
  TrialLog log("oracle_qdis");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto R = random_correspondence(rng, X.size(), Y.size());
    const double closed = qdis(R, X, Y);
    const double reference = oracle_qdis_bisect(R, X, Y);
    log.check(std::abs(closed - reference), 0.0, opt.tol, "qdis closed form vs bisect", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_oracle_min_r(const SuiteOptions& opt) {
  TrialLog log("oracle_min_r");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto mp = random_map_pair(rng, X.size(), Y.size());
    const double closed = qi::min_r_for_pair(mp, X, Y);
    const double reference = oracle_min_r_bisect(mp, X, Y);
    log.check(std::abs(closed - reference), 0.0, opt.tol, "min_r closed form vs bisect", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_reduction(const SuiteOptions& opt) {
  TrialLog log("reduction");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space(3, rng.next(), opt.lo, opt.hi, opt.slack);
    const auto Y = random_space(3, rng.next(), opt.lo, opt.hi, opt.slack);

    const double gh_pairs = gh::gh_exact(X, Y, opt.max_evals, opt.threads);
    const double gh_subsets =
        0.5 * search::enumerate_correspondences(
                  3, 3, [&](const Correspondence& R) { return dis(R, X, Y); })
                  .best_value;
    log.check(std::abs(gh_pairs - gh_subsets), 0.0, opt.tol, "gh map-pair vs subsets", trial);

    const double d_pairs = dmetric::d_exact(X, Y, opt.max_evals, opt.threads);
    const double d_subsets =
        search::enumerate_correspondences(
            3, 3, [&](const Correspondence& R) { return qdis(R, X, Y); })
            .best_value;
    log.check(std::abs(d_pairs - d_subsets), 0.0, opt.tol, "D map-pair vs subsets", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_triangle_d(const SuiteOptions& opt) {
  TrialLog log("triangle_d");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto Z = random_space_in(rng, opt);
    const double xy = dmetric::d_exact(X, Y, opt.max_evals, opt.threads);
    const double yz = dmetric::d_exact(Y, Z, opt.max_evals, opt.threads);
    const double xz = dmetric::d_exact(X, Z, opt.max_evals, opt.threads);
    log.check(xz, xy + yz, opt.tol, "D(X,Z) <= D(X,Y) + D(Y,Z)", trial);
    log.check(xy, xz + yz, opt.tol, "D(X,Y) <= D(X,Z) + D(Z,Y)", trial);
    log.check(yz, xy + xz, opt.tol, "D(Y,Z) <= D(Y,X) + D(X,Z)", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_gh_triangle(const SuiteOptions& opt) {
  TrialLog log("gh_triangle");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto Z = random_space_in(rng, opt);
    const double xy = gh::gh_exact(X, Y, opt.max_evals, opt.threads);
    const double yz = gh::gh_exact(Y, Z, opt.max_evals, opt.threads);
    const double xz = gh::gh_exact(X, Z, opt.max_evals, opt.threads);
    log.check(xz, xy + yz, opt.tol, "gh(X,Z) <= gh(X,Y) + gh(Y,Z)", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_qhat_triangle(const SuiteOptions& opt) {
  TrialLog log("qhat_triangle");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto Z = random_space_in(rng, opt);
    const double r = qi::qhat_exact(X, Y, opt.max_evals, opt.threads);
    const double r2 = qi::qhat_exact(Y, Z, opt.max_evals, opt.threads);
    const double xz = qi::qhat_exact(X, Z, opt.max_evals, opt.threads);
    log.check(xz, qi::triangle_bound_qhat(r, r2), opt.tol,
              "qhat(X,Z) <= 2(r + r' + r r')", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_bounds(const SuiteOptions& opt) {
  TrialLog log("bounds");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const double qhat = qi::qhat_exact(X, Y, opt.max_evals, opt.threads);
    const double d = dmetric::d_exact(X, Y, opt.max_evals, opt.threads);
    log.check(d, dmetric::bound_d_from_qhat(qhat), opt.tol, "D <= ln(1 + 2 qhat)", trial);
    log.check(qhat, dmetric::bound_qhat_from_d(d), opt.tol, "qhat <= e^{2D} - e^D", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_gh_to_qi(const SuiteOptions& opt) {
  TrialLog log("gh_to_qi");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const double qhat = qi::qhat_exact(X, Y, opt.max_evals, opt.threads);
    const double gh_value = gh::gh_exact(X, Y, opt.max_evals, opt.threads);
    log.check(qhat, 4.0 * gh_value, opt.tol, "qhat <= 4 gh", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_composition(const SuiteOptions& opt) {
  TrialLog log("composition");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto Z = random_space_in(rng, opt);
    const auto first = qi::qhat_exact_result(X, Y, opt.max_evals, opt.threads);
    const auto second = qi::qhat_exact_result(Y, Z, opt.max_evals, opt.threads);

    MapPair composed;
    composed.f.resize(X.size());
    composed.g.resize(Z.size());
    for (std::size_t x = 0; x < X.size(); ++x)
      composed.f[x] = second.best_witness.f[first.best_witness.f[x]];
    for (std::size_t z = 0; z < Z.size(); ++z)
      composed.g[z] = first.best_witness.g[second.best_witness.g[z]];

    const double r1 = first.best_value;
    const double r2 = second.best_value;
    const auto params = qi::compose_params(QiParams(1.0 + r1, r1, r1),
                                           QiParams(1.0 + r2, r2, r2));
    log.check(qi::qi_violation(composed, params, X, Z), 0.0, opt.tol,
              "composed maps certify composed constants", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_eps_iso(const SuiteOptions& opt) {
  TrialLog log("eps_iso");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);

    // gh < eps implies a 2 eps-isometry exists.
    const double gh_value = gh::gh_exact(X, Y, opt.max_evals, opt.threads);
    const double eps = gh_value * 1.1 + 0.01;
    if (!gh::find_eps_isometry(X, Y, 2.0 * eps, opt.max_evals))
      log.fail("no 2eps-isometry although gh < eps", trial, gh_value, eps);

    // An eps-isometry (at the minimal eps) implies gh < 2 eps.
    const double m = gh::min_eps_isometry(X, Y, opt.max_evals);
    if (m == 0.0) {
      if (gh_value != 0.0) log.fail("isometric pair with nonzero gh", trial, gh_value, 0.0);
    } else if (!(gh_value < 2.0 * m)) {
      log.fail("gh not below 2 eps for existing eps-isometry", trial, gh_value, 2.0 * m);
    } else {
      log.report.worst_slack = std::max(log.report.worst_slack, gh_value - 2.0 * m);
    }
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_path(const SuiteOptions& opt) {
  TrialLog log("path");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto R = union_correspondence(random_map_pair(rng, X.size(), Y.size()));
    const auto fam = interp::InterpolationFamily::make(R, X, Y);

    // Endpoints reproduce X and Y after the quotient's canonical ordering.
    const auto at0 = interp::sample(fam, 0.0);
    bool endpoint_ok = at0.size() == X.size();
    if (endpoint_ok)
      for (std::size_t i = 0; i < X.size() && endpoint_ok; ++i)
        for (std::size_t j = 0; j < X.size() && endpoint_ok; ++j)
          endpoint_ok = at0.dist(i, j) == X.dist(i, j);
    if (!endpoint_ok) log.fail("R_0 does not reproduce X", trial);

    const auto at1 = interp::sample(fam, 1.0);
    bool end1_ok = at1.size() == Y.size();
    if (end1_ok) {
      // Classes of R_1 are keyed by the y coordinate, in order of first
      // appearance in the sorted pair list.
      std::vector<std::uint32_t> class_to_y;
      std::vector<bool> seen(Y.size(), false);
      for (const auto& [i, j] : fam.R.pairs())
        if (!seen[j]) {
          seen[j] = true;
          class_to_y.push_back(j);
        }
      for (std::size_t a = 0; a < Y.size() && end1_ok; ++a)
        for (std::size_t b = 0; b < Y.size() && end1_ok; ++b)
          end1_ok = at1.dist(a, b) == Y.dist(class_to_y[a], class_to_y[b]);
    }
    if (!end1_ok) log.fail("R_1 does not reproduce Y", trial);

    for (int step = 0; step < opt.steps_per_family; ++step) {
      const double t = rng.uniform();
      const double s = rng.uniform();
      log.check(interp::step_distortion(fam, t, s),
                interp::step_bound(fam.r, std::abs(t - s)), opt.tol,
                "step distortion above proof bound", trial);
    }

    const double bound = dmetric::bound_qhat_from_d(fam.r);  // e^{2r} - e^r
    log.check(interp::path_length_estimate(fam, opt.partitions), bound, opt.path_tol,
              "path length above e^{2r} - e^r", trial);

    const double ratio = interp::step_bound(fam.r, opt.ratio_delta) / opt.ratio_delta;
    if (bound == 0.0) {
      if (ratio != 0.0) log.fail("nonzero slope for r = 0", trial, ratio, 0.0);
    } else {
      log.check(std::abs(ratio - bound), opt.ratio_rel_tol * bound, 0.0,
                "small-delta slope off e^{2r} - e^r", trial);
    }
  }
  log.report.trials = opt.trials;
  return log.report;
}

SuiteReport run_qdis_subadditivity(const SuiteOptions& opt) {
  TrialLog log("qdis_subadditivity");
  SplitMix64 rng(opt.seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const auto X = random_space_in(rng, opt);
    const auto Y = random_space_in(rng, opt);
    const auto Z = random_space_in(rng, opt);
    const auto R = random_correspondence(rng, X.size(), Y.size());
    const auto S = random_correspondence(rng, Y.size(), Z.size());
    const auto T = dmetric::compose_correspondences(R, S);
    log.check(qdis(T, X, Z), qdis(R, X, Y) + qdis(S, Y, Z), opt.tol,
              "q-dis(T) <= q-dis(R) + q-dis(S)", trial);
  }
  log.report.trials = opt.trials;
  return log.report;
}

}  // namespace qimet::propsuite
