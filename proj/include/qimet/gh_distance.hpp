#pragma once

#include <optional>

#include "qimet/search.hpp"

namespace qimet::gh {

/// Distortion of the union correspondence of a map pair, evaluated as
/// max{dis f, dis g, coupling(f,g)} without materializing the union.
double map_pair_dis(const MapPair& mp, const FiniteMetricSpace& X,
                    const FiniteMetricSpace& Y);

/// Exact Gromov-Hausdorff distance: half the minimal distortion over all
/// correspondences, computed over map pairs (every correspondence contains
/// a union-form sub-correspondence of no larger distortion).
search::SearchResult<MapPair> gh_exact_result(
    const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
    std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);
double gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);

/// Annealing upper bound on the GH distance.
search::SearchResult<MapPair> gh_search(const FiniteMetricSpace& X,
                                        const FiniteMetricSpace& Y,
                                        const search::SearchBudget& budget,
                                        int threads = 1);

/// Half the diameter gap; a lower bound for gh_exact.
double gh_lower_bound_diam(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

/// True iff dis f <= eps and f(X) is an eps-net in Y (every point of Y
/// within eps of the image).
bool eps_isometry_check(std::span<const std::uint32_t> f, const FiniteMetricSpace& X,
                        const FiniteMetricSpace& Y, double eps);

/// Exhaustive search over the nY^nX maps for an eps-isometry; returns the
/// first one found in enumeration order.
std::optional<std::vector<std::uint32_t>> find_eps_isometry(
    const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double eps,
    std::uint64_t cap = search::kDefaultMaxEvals);

/// Smallest eps for which an eps-isometry X -> Y exists: the minimum over
/// all maps of max(dis f, net radius of f(X)).
double min_eps_isometry(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                        std::uint64_t cap = search::kDefaultMaxEvals);

/// Finite pointed-convergence predicate: true iff some map from the closed
/// ball U_r(base of X) into Y fixes the base points, has dis f < eps, and
/// the eps-neighbourhood of its image covers the closed ball U_{r-eps}
/// around Y's base. Balls are closed; decided by exhaustive map search.
bool pointed_gh_check(const PointedSpace& Xp, const PointedSpace& Yp, double r,
                      double eps, std::uint64_t cap = search::kDefaultMaxEvals);

}  // namespace qimet::gh
