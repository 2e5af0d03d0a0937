#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "qimet/metric_space.hpp"

namespace qimet {

/// Sentinel exponent for the sup norm.
inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Two points at distance d.
FiniteMetricSpace gen_two_point(double d);

/// {0, alpha, 2*alpha, ..., (count-1)*alpha} with the absolute-difference
/// metric. Throws NonpositiveAlpha for alpha <= 0.
FiniteMetricSpace gen_scaled_lattice(double alpha, std::size_t count);

/// Planar polygonal chain whose k-th segment has length k, consecutive
/// segments at right angles with alternating turn direction (staircase).
/// Points are the chain vertices plus samples along each segment at the
/// given density (samples_per_unit <= 0 keeps vertices only). The metric is
/// the ambient Euclidean chord distance, not arc length.
FiniteMetricSpace gen_polyline_chain(std::size_t segments, double samples_per_unit);

/// Integer grid {0,...,side-1}^dim under the l_p metric. p must be >= 1 or
/// kInfExponent; throws BadExponent otherwise.
FiniteMetricSpace gen_lp_grid(double p, std::size_t dim, std::size_t side);

/// Same grid under the norm (1-t)*|x|_1 + t*|x|_2; entries are exactly the
/// convex combination of the l_1 and l_2 entries for the same point pair.
FiniteMetricSpace gen_interpolated_norm_grid(double t, std::size_t dim, std::size_t side);

/// Seeded random metric space: symmetric entries uniform in [lo, hi], then
/// iterated shortest-path closure (Floyd-Warshall) until fixed point. slack
/// is added to every off-diagonal entry afterwards to move samples away
/// from degenerate (tight-triangle) instances.
FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed, double lo = 0.5,
                               double hi = 4.0, double slack = 0.0);

/// l_p distance between coordinate vectors (p >= 1 or kInfExponent).
double lp_distance(std::span<const double> a, std::span<const double> b, double p);

}  // namespace qimet
