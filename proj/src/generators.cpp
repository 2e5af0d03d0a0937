#include "qimet/generators.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qimet/rng.hpp"

namespace qimet {

namespace {

// Keeps generated matrices comfortably in memory (n^2 doubles).
constexpr std::size_t kMaxGeneratedPoints = 4096;

void check_point_budget(std::size_t n) {
  if (n > kMaxGeneratedPoints)
    throw BadParams("generator would produce " + std::to_string(n) +
                    " points, limit is " + std::to_string(kMaxGeneratedPoints));
}

FiniteMetricSpace from_coords(const std::vector<std::pair<double, double>>& pts,
                              std::vector<std::string> labels) {
  const std::size_t n = pts.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      const double d = std::hypot(dx, dy);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  return FiniteMetricSpace::validated_flat(std::move(dist), n, std::move(labels));
}

std::vector<std::vector<double>> grid_points(std::size_t dim, std::size_t side) {
  if (dim < 1 || side < 2) throw BadParams("lp grid needs dim >= 1 and side >= 2");
  std::size_t n = 1;
  for (std::size_t d = 0; d < dim; ++d) {
    n *= side;
    check_point_budget(n);
  }
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t d = 0; d < dim; ++d) {
      pts[idx][d] = static_cast<double>(rest % side);
      rest /= side;
    }
  }
  return pts;
}

std::string grid_label(const std::vector<double>& coords) {
  std::string label = "(";
  for (std::size_t d = 0; d < coords.size(); ++d) {
    if (d) label += ",";
    label += std::to_string(static_cast<long long>(coords[d]));
  }
  return label + ")";
}

FiniteMetricSpace grid_space(std::size_t dim, std::size_t side,
                             const auto& pair_distance) {
  const auto pts = grid_points(dim, side);
  const std::size_t n = pts.size();
  std::vector<double> dist(n * n, 0.0);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = grid_label(pts[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(pts[i], pts[j]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  return FiniteMetricSpace::validated_flat(std::move(dist), n, std::move(labels));
}

}  // namespace

double lp_distance(std::span<const double> a, std::span<const double> b, double p) {
  if (a.size() != b.size()) throw SizeMismatch("lp_distance: dimension mismatch");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) m = std::max(m, std::abs(a[d] - b[d]));
    return m;
  }
  if (!(p >= 1.0)) throw BadExponent("lp exponent must be >= 1 or infinity");
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) s += std::abs(a[d] - b[d]);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      const double t = a[d] - b[d];
      s += t * t;
    }
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) s += std::pow(std::abs(a[d] - b[d]), p);
  return std::pow(s, 1.0 / p);
}

FiniteMetricSpace gen_two_point(double d) {
  if (!(d > 0.0)) throw BadParams("two-point distance must be positive");
  return FiniteMetricSpace::validated({{0.0, d}, {d, 0.0}}, {"a", "b"});
}

FiniteMetricSpace gen_scaled_lattice(double alpha, std::size_t count) {
  if (!(alpha > 0.0)) throw NonpositiveAlpha("lattice scale must be positive");
  if (count < 1) throw BadParams("lattice needs at least one point");
  check_point_budget(count);
  std::vector<double> coord(count);
  for (std::size_t k = 0; k < count; ++k) coord[k] = alpha * static_cast<double>(k);
  std::vector<double> dist(count * count, 0.0);
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels[i] = std::to_string(i);
    for (std::size_t j = 0; j < count; ++j) dist[i * count + j] = std::abs(coord[i] - coord[j]);
  }
  return FiniteMetricSpace::validated_flat(std::move(dist), count, std::move(labels));
}

FiniteMetricSpace gen_polyline_chain(std::size_t segments, double samples_per_unit) {
  if (segments < 1) throw BadParams("polyline needs at least one segment");

  std::vector<std::pair<double, double>> pts;
  std::vector<std::string> labels;
  pts.emplace_back(0.0, 0.0);
  labels.push_back("v0");

  std::pair<double, double> pos{0.0, 0.0};
  for (std::size_t k = 1; k <= segments; ++k) {
    // Alternating turns: odd segments head +x, even segments head -y.
    const double ux = (k % 2 == 1) ? 1.0 : 0.0;
    const double uy = (k % 2 == 1) ? 0.0 : -1.0;
    const double len = static_cast<double>(k);

    std::size_t subdivisions = 1;
    if (samples_per_unit > 0.0)
      subdivisions = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len * samples_per_unit)));
    for (std::size_t s = 1; s < subdivisions; ++s) {
      const double arc = len * static_cast<double>(s) / static_cast<double>(subdivisions);
      pts.emplace_back(pos.first + ux * arc, pos.second + uy * arc);
      labels.push_back("s" + std::to_string(k) + "." + std::to_string(s));
    }

    pos = {pos.first + ux * len, pos.second + uy * len};
    pts.push_back(pos);
    labels.push_back("v" + std::to_string(k));
    check_point_budget(pts.size());
  }

  return from_coords(pts, std::move(labels));
}

FiniteMetricSpace gen_lp_grid(double p, std::size_t dim, std::size_t side) {
  if (!(p >= 1.0) && !std::isinf(p))
    throw BadExponent("lp exponent must be >= 1 or infinity");
  return grid_space(dim, side, [p](const auto& a, const auto& b) {
    return lp_distance(a, b, p);
  });
}

FiniteMetricSpace gen_interpolated_norm_grid(double t, std::size_t dim, std::size_t side) {
  if (!(t >= 0.0 && t <= 1.0)) throw OutOfRange("interpolation parameter t must be in [0,1]");
  return grid_space(dim, side, [t](const auto& a, const auto& b) {
    return (1.0 - t) * lp_distance(a, b, 1.0) + t * lp_distance(a, b, 2.0);
  });
}

FiniteMetricSpace random_space(std::size_t n, std::uint64_t seed, double lo,
                               double hi, double slack) {
  if (n < 1) throw BadParams("random space needs at least one point");
  if (!(lo > 0.0 && lo <= hi)) throw BadParams("random space needs 0 < lo <= hi");
  if (slack < 0.0) throw BadParams("slack must be nonnegative");
  check_point_budget(n);

  SplitMix64 rng(seed);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform(lo, hi);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }

  // Shortest-path closure, iterated to a fixed point so the repair is
  // idempotent even under floating-point rounding.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double via = d[i * n + k] + d[k * n + j];
          if (via < d[i * n + j]) {
            d[i * n + j] = via;
            changed = true;
          }
        }
  }

  if (slack > 0.0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) d[i * n + j] += slack;

  return FiniteMetricSpace::validated_flat(std::move(d), n);
}

}  // namespace qimet
