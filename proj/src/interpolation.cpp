#include "qimet/interpolation.hpp"

#include <cmath>
#include <utility>

namespace qimet::interp {

namespace {

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw OutOfRange("interpolation parameter outside [0,1]");
}

std::vector<double> blended(const InterpolationFamily& fam, double t) {
  const auto& pairs = fam.R.pairs();
  const std::size_t n = pairs.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      const double a = fam.X.dist(pairs[p].first, pairs[q].first);
      const double b = fam.Y.dist(pairs[p].second, pairs[q].second);
      const double v = (1.0 - t) * a + t * b;
      d[p * n + q] = v;
      d[q * n + p] = v;
    }
  return d;
}

std::vector<std::string> pair_labels(const InterpolationFamily& fam) {
  std::vector<std::string> labels;
  labels.reserve(fam.R.size());
  for (const auto& [i, j] : fam.R.pairs())
    labels.push_back(fam.X.labels()[i] + "|" + fam.Y.labels()[j]);
  return labels;
}

}  // namespace

InterpolationFamily InterpolationFamily::make(Correspondence R, FiniteMetricSpace X,
                                              FiniteMetricSpace Y) {
  const double r = qdis(R, X, Y);
  return InterpolationFamily{std::move(R), std::move(X), std::move(Y), r};
}

PseudoMetricSpace sample_raw(const InterpolationFamily& fam, double t) {
  check_t(t);
  const std::size_t n = fam.R.size();
  return PseudoMetricSpace::validated_flat(blended(fam, t), n, pair_labels(fam));
}

FiniteMetricSpace sample(const InterpolationFamily& fam, double t) {
  check_t(t);
  if (t == 0.0 || t == 1.0) return quotient(sample_raw(fam, t));
  // Strictly inside (0,1) the blend is already a metric: it vanishes only
  // when both endpoint distances do, i.e. on equal pairs.
  const std::size_t n = fam.R.size();
  return FiniteMetricSpace::validated_flat(blended(fam, t), n, pair_labels(fam));
}

double step_distortion(const InterpolationFamily& fam, double t, double s) {
  check_t(t);
  check_t(s);
  const auto& pairs = fam.R.pairs();
  const std::size_t n = pairs.size();
  double u_star = 1.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      const double a = fam.X.dist(pairs[p].first, pairs[q].first);
      const double b = fam.Y.dist(pairs[p].second, pairs[q].second);
      const double dt = (1.0 - t) * a + t * b;
      const double ds = (1.0 - s) * a + s * b;
      u_star = std::max(u_star, detail::qdis_pair_scale(dt, ds));
    }
  return std::log(u_star);
}

double step_bound(double r, double delta) {
  if (!(r >= 0.0 && delta >= 0.0)) throw BadParams("step bound needs r, delta >= 0");
  const double er = std::exp(r);
  const double d1 = std::log1p(delta * (er - 1.0));
  // e^{2D2} - e^{D2} = c solves to e^{D2} = (1 + sqrt(1 + 4c)) / 2.
  const double c = delta * (er * er - er);
  const double d2 = std::log(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * c)));
  return std::max(d1, d2);
}

double path_length_estimate(const InterpolationFamily& fam, std::size_t partitions) {
  if (partitions < 1) throw BadParams("need at least one partition step");
  // Summation order is fixed for reproducibility.
  double total = 0.0;
  for (std::size_t i = 0; i < partitions; ++i) {
    const double t0 = static_cast<double>(i) / static_cast<double>(partitions);
    const double t1 = static_cast<double>(i + 1) / static_cast<double>(partitions);
    total += step_distortion(fam, t0, t1);
  }
  return total;
}

}  // namespace qimet::interp
