#include "qimet/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qimet {

namespace {

void check_sizes(const Correspondence& R, const FiniteMetricSpace& X,
                 const FiniteMetricSpace& Y) {
  if (R.nX() != X.size() || R.nY() != Y.size())
    throw SizeMismatch("correspondence is " + std::to_string(R.nX()) + "x" +
                       std::to_string(R.nY()) + ", spaces have " +
                       std::to_string(X.size()) + " and " +
                       std::to_string(Y.size()) + " points");
}

void check_map(std::span<const std::uint32_t> f, const FiniteMetricSpace& X,
               const FiniteMetricSpace& Y) {
  if (f.size() != X.size())
    throw SizeMismatch("map has " + std::to_string(f.size()) + " entries, domain has " +
                       std::to_string(X.size()) + " points");
  for (auto v : f)
    if (v >= Y.size()) throw SizeMismatch("map image index out of range");
}

}  // namespace

MapPair MapPair::identity(std::size_t n) {
  MapPair mp;
  mp.f.resize(n);
  mp.g.resize(n);
  for (std::size_t i = 0; i < n; ++i) mp.f[i] = mp.g[i] = static_cast<std::uint32_t>(i);
  return mp;
}

QiParams::QiParams(double a, double b, double c) : A(a), B(b), C(c) {
  if (!(A >= 1.0) || !(B >= 0.0) || !(C >= 0.0))
    throw BadParams("quasi-isometry constants need A >= 1 and B, C >= 0");
}

Correspondence::Correspondence(std::size_t nX, std::size_t nY,
                               std::vector<IndexPair> pairs)
    : nX_(nX), nY_(nY), pairs_(std::move(pairs)), bits_((nX * nY + 63) / 64, 0) {
  for (const auto& [i, j] : pairs_) {
    const std::size_t cell = static_cast<std::size_t>(i) * nY_ + j;
    bits_[cell >> 6] |= std::uint64_t{1} << (cell & 63);
  }
}

Correspondence Correspondence::from_pairs(std::size_t nX, std::size_t nY,
                                          std::vector<IndexPair> pairs) {
  if (nX == 0 || nY == 0) throw BadParams("correspondence needs nonempty sides");
  if (pairs.empty()) throw BadParams("correspondence needs at least one pair");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<bool> seen_x(nX, false), seen_y(nY, false);
  for (const auto& [i, j] : pairs) {
    if (i >= nX || j >= nY) throw BadParams("correspondence pair index out of range");
    seen_x[i] = true;
    seen_y[j] = true;
  }
  if (!std::all_of(seen_x.begin(), seen_x.end(), [](bool b) { return b; }) ||
      !std::all_of(seen_y.begin(), seen_y.end(), [](bool b) { return b; }))
    throw BadParams("not a correspondence: a projection misses a point");

  return Correspondence(nX, nY, std::move(pairs));
}

Correspondence Correspondence::diagonal(std::size_t n) {
  std::vector<IndexPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i)
    pairs[i] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i)};
  return from_pairs(n, n, std::move(pairs));
}

Correspondence Correspondence::full(std::size_t nX, std::size_t nY) {
  std::vector<IndexPair> pairs;
  pairs.reserve(nX * nY);
  for (std::uint32_t i = 0; i < nX; ++i)
    for (std::uint32_t j = 0; j < nY; ++j) pairs.push_back({i, j});
  return from_pairs(nX, nY, std::move(pairs));
}

Correspondence Correspondence::transpose() const {
  std::vector<IndexPair> pairs;
  pairs.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) pairs.push_back({j, i});
  return from_pairs(nY_, nX_, std::move(pairs));
}

Correspondence union_correspondence(const MapPair& mp) {
  std::vector<IndexPair> pairs;
  pairs.reserve(mp.nX() + mp.nY());
  for (std::uint32_t i = 0; i < mp.nX(); ++i) pairs.push_back({i, mp.f[i]});
  for (std::uint32_t j = 0; j < mp.nY(); ++j) pairs.push_back({mp.g[j], j});
  return Correspondence::from_pairs(mp.nX(), mp.nY(), std::move(pairs));
}

double dis(const Correspondence& R, const FiniteMetricSpace& X,
           const FiniteMetricSpace& Y) {
  check_sizes(R, X, Y);
  const auto& pairs = R.pairs();
  double sup = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const double a = X.dist(pairs[p].first, pairs[q].first);
      const double b = Y.dist(pairs[p].second, pairs[q].second);
      sup = std::max(sup, std::abs(a - b));
    }
  return sup;
}

double dis_map(std::span<const std::uint32_t> f, const FiniteMetricSpace& X,
               const FiniteMetricSpace& Y) {
  check_map(f, X, Y);
  double sup = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t x2 = x + 1; x2 < f.size(); ++x2)
      sup = std::max(sup, std::abs(X.dist(x, x2) - Y.dist(f[x], f[x2])));
  return sup;
}

double coupling(const MapPair& mp, const FiniteMetricSpace& X,
                const FiniteMetricSpace& Y) {
  check_map(mp.f, X, Y);
  check_map(mp.g, Y, X);
  double sup = 0.0;
  for (std::size_t x = 0; x < mp.nX(); ++x)
    for (std::size_t y = 0; y < mp.nY(); ++y)
      sup = std::max(sup, std::abs(X.dist(x, mp.g[y]) - Y.dist(mp.f[x], y)));
  return sup;
}

namespace detail {

double positive_root(double a, double b) {
  if (a <= 0.0) return std::max(0.0, 1.0 - b);
  const double c = b - 1.0;
  const double disc = std::sqrt(c * c + 4.0 * a);
  // For c >= 0 the direct form (-c + disc)/2 cancels; use the conjugate.
  return c >= 0.0 ? 2.0 * a / (c + disc) : 0.5 * (disc - c);
}

double qdis_pair_scale(double a, double b) {
  if (a == b) return 1.0;  // both constraints hold at r = 0
  // Upper constraint a <= u*b + u^2 - u   <=>  u >= root of u^2 + (b-1)u - a.
  // Lower constraint b/u - u + 1 <= a     <=>  u >= root of u^2 + (a-1)u - b.
  return std::max(positive_root(a, b), positive_root(b, a));
}

}  // namespace detail

double qdis(const Correspondence& R, const FiniteMetricSpace& X,
            const FiniteMetricSpace& Y) {
  check_sizes(R, X, Y);
  const auto& pairs = R.pairs();
  double u = 1.0;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const double a = X.dist(pairs[p].first, pairs[q].first);
      const double b = Y.dist(pairs[p].second, pairs[q].second);
      u = std::max(u, detail::qdis_pair_scale(a, b));
    }
  return std::log(u);
}

}  // namespace qimet
