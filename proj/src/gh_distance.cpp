#include "qimet/gh_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qimet::gh {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

bool increment_digits(std::vector<std::uint32_t>& digits, std::uint32_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

double net_radius(std::span<const std::uint32_t> f, const FiniteMetricSpace& Y) {
  double radius = 0.0;
  for (std::size_t y = 0; y < Y.size(); ++y) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto fx : f) nearest = std::min(nearest, Y.dist(fx, y));
    radius = std::max(radius, nearest);
  }
  return radius;
}

}  // namespace

double map_pair_dis(const MapPair& mp, const FiniteMetricSpace& X,
                    const FiniteMetricSpace& Y) {
  return std::max({dis_map(mp.f, X, Y), dis_map(mp.g, Y, X), coupling(mp, X, Y)});
}

search::SearchResult<MapPair> gh_exact_result(const FiniteMetricSpace& X,
                                              const FiniteMetricSpace& Y,
                                              std::uint64_t cap, int threads) {
  auto result = search::enumerate_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return map_pair_dis(mp, X, Y); }, cap, threads);
  result.best_value *= 0.5;
  return result;
}

double gh_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                std::uint64_t cap, int threads) {
  return gh_exact_result(X, Y, cap, threads).best_value;
}

search::SearchResult<MapPair> gh_search(const FiniteMetricSpace& X,
                                        const FiniteMetricSpace& Y,
                                        const search::SearchBudget& budget,
                                        int threads) {
  auto result = search::local_search_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return map_pair_dis(mp, X, Y); }, budget, threads);
  result.best_value *= 0.5;
  return result;
}

double gh_lower_bound_diam(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  return 0.5 * std::abs(X.diameter() - Y.diameter());
}

bool eps_isometry_check(std::span<const std::uint32_t> f, const FiniteMetricSpace& X,
                        const FiniteMetricSpace& Y, double eps) {
  if (!(eps > 0.0)) throw BadParams("eps must be positive");
  return dis_map(f, X, Y) <= eps && net_radius(f, Y) <= eps;
}

std::optional<std::vector<std::uint32_t>> find_eps_isometry(const FiniteMetricSpace& X,
                                                            const FiniteMetricSpace& Y,
                                                            double eps,
                                                            std::uint64_t cap) {
  if (!(eps > 0.0)) throw BadParams("eps must be positive");
  const std::uint64_t total = saturating_pow(Y.size(), X.size());
  if (total > cap) throw BudgetExceeded(total, cap);

  std::vector<std::uint32_t> f(X.size(), 0);
  do {
    if (dis_map(f, X, Y) <= eps && net_radius(f, Y) <= eps) return f;
  } while (increment_digits(f, static_cast<std::uint32_t>(Y.size())));
  return std::nullopt;
}

double min_eps_isometry(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                        std::uint64_t cap) {
  const std::uint64_t total = saturating_pow(Y.size(), X.size());
  if (total > cap) throw BudgetExceeded(total, cap);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> f(X.size(), 0);
  do {
    best = std::min(best, std::max(dis_map(f, X, Y), net_radius(f, Y)));
  } while (increment_digits(f, static_cast<std::uint32_t>(Y.size())));
  return best;
}

bool pointed_gh_check(const PointedSpace& Xp, const PointedSpace& Yp, double r,
                      double eps, std::uint64_t cap) {
  if (!(r > eps && eps > 0.0)) throw BadParams("pointed check needs r > eps > 0");
  const auto& X = Xp.space;
  const auto& Y = Yp.space;

  std::vector<std::uint32_t> ball;  // closed ball U_r around the base point
  std::size_t base_slot = 0;
  for (std::uint32_t i = 0; i < X.size(); ++i)
    if (X.dist(Xp.base, i) <= r) {
      if (i == Xp.base) base_slot = ball.size();
      ball.push_back(i);
    }

  std::vector<std::uint32_t> target;  // U_{r-eps} around Y's base
  for (std::uint32_t j = 0; j < Y.size(); ++j)
    if (Y.dist(Yp.base, j) <= r - eps) target.push_back(j);

  const std::uint64_t total = saturating_pow(Y.size(), ball.size() - 1);
  if (total > cap) throw BudgetExceeded(total, cap);

  // Only the non-base coordinates vary; f(base) = base is pinned.
  std::vector<std::uint32_t> digits(ball.size() - 1, 0);
  std::vector<std::uint32_t> f(ball.size(), 0);
  f[base_slot] = static_cast<std::uint32_t>(Yp.base);
  do {
    for (std::size_t a = 0, slot = 0; a < ball.size(); ++a)
      if (a != base_slot) f[a] = digits[slot++];

    double dis_f = 0.0;
    for (std::size_t a = 0; a < ball.size(); ++a)
      for (std::size_t b = a + 1; b < ball.size(); ++b)
        dis_f = std::max(dis_f, std::abs(X.dist(ball[a], ball[b]) - Y.dist(f[a], f[b])));
    if (!(dis_f < eps)) continue;

    bool covered = true;
    for (const auto y : target) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto fy : f) nearest = std::min(nearest, Y.dist(fy, y));
      if (nearest > eps) {
        covered = false;
        break;
      }
    }
    if (covered) return true;
  } while (increment_digits(digits, static_cast<std::uint32_t>(Y.size())));
  return false;
}

}  // namespace qimet::gh
