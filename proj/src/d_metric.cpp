#include "qimet/d_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qimet::dmetric {

double qdis_of_map_pair(const MapPair& mp, const FiniteMetricSpace& X,
                        const FiniteMetricSpace& Y) {
  if (mp.nX() != X.size() || mp.nY() != Y.size())
    throw SizeMismatch("map pair does not match the spaces");
  const std::size_t nX = mp.nX();
  const std::size_t total = nX + mp.nY();
  // Slot u < nX is the pair (u, f[u]); otherwise (g[u-nX], u-nX).
  auto x_of = [&](std::size_t u) { return u < nX ? u : mp.g[u - nX]; };
  auto y_of = [&](std::size_t u) { return u < nX ? mp.f[u] : u - nX; };

  double u_star = 1.0;
  for (std::size_t p = 0; p < total; ++p)
    for (std::size_t q = p + 1; q < total; ++q) {
      const double a = X.dist(x_of(p), x_of(q));
      const double b = Y.dist(y_of(p), y_of(q));
      u_star = std::max(u_star, detail::qdis_pair_scale(a, b));
    }
  return std::log(u_star);
}

search::SearchResult<Correspondence> d_exact_result(const FiniteMetricSpace& X,
                                                    const FiniteMetricSpace& Y,
                                                    std::uint64_t cap, int threads) {
  const auto inner = search::enumerate_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return qdis_of_map_pair(mp, X, Y); }, cap, threads);
  return {inner.best_value, union_correspondence(inner.best_witness),
          inner.evaluations_used, inner.certified_exact};
}

double d_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
               std::uint64_t cap, int threads) {
  return d_exact_result(X, Y, cap, threads).best_value;
}

search::SearchResult<Correspondence> d_search(const FiniteMetricSpace& X,
                                              const FiniteMetricSpace& Y,
                                              const search::SearchBudget& budget,
                                              int threads) {
  const auto inner = search::local_search_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return qdis_of_map_pair(mp, X, Y); }, budget, threads);
  return {inner.best_value, union_correspondence(inner.best_witness),
          inner.evaluations_used, inner.certified_exact};
}

Correspondence compose_correspondences(const Correspondence& R, const Correspondence& S) {
  if (R.nY() != S.nX())
    throw SizeMismatch("composition needs R's right side (" + std::to_string(R.nY()) +
                       ") to match S's left side (" + std::to_string(S.nX()) + ")");

  std::vector<std::vector<std::uint32_t>> successors(S.nX());
  for (const auto& [y, z] : S.pairs()) successors[y].push_back(z);

  std::vector<IndexPair> pairs;
  for (const auto& [x, y] : R.pairs())
    for (const auto z : successors[y]) pairs.push_back({x, z});
  // from_pairs sorts and deduplicates; surjectivity is inherited from R and S.
  return Correspondence::from_pairs(R.nX(), S.nY(), std::move(pairs));
}

double bound_d_from_qhat(double r) {
  if (!(r >= 0.0)) throw BadParams("bound needs r >= 0");
  return std::log1p(2.0 * r);
}

double bound_qhat_from_d(double r) {
  if (!(r >= 0.0)) throw BadParams("bound needs r >= 0");
  const double er = std::exp(r);
  return er * er - er;
}

}  // namespace qimet::dmetric
