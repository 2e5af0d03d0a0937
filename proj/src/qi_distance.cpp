#include "qimet/qi_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qimet::qi {

namespace {

void check_pair(const MapPair& mp, const FiniteMetricSpace& X,
                const FiniteMetricSpace& Y) {
  if (mp.nX() != X.size() || mp.nY() != Y.size())
    throw SizeMismatch("map pair is " + std::to_string(mp.nX()) + "x" +
                       std::to_string(mp.nY()) + ", spaces have " +
                       std::to_string(X.size()) + " and " +
                       std::to_string(Y.size()) + " points");
  for (auto v : mp.f)
    if (v >= Y.size()) throw SizeMismatch("f image index out of range");
  for (auto v : mp.g)
    if (v >= X.size()) throw SizeMismatch("g image index out of range");
}

// Excess of the embedding constraints for one (domain, image) distance pair:
// (1/A)s - B <= m <= A s + B.
double embedding_violation(double s, double m, const QiParams& p) {
  return std::max(m - (p.A * s + p.B), s / p.A - p.B - m);
}

// Minimal r >= 0 with m <= (1+r)s + r, i.e. r >= (m - s)/(s + 1).
double embed_upper_r(double s, double m) {
  return m > s ? (m - s) / (s + 1.0) : 0.0;
}

// Minimal r >= 0 with s/(1+r) - r <= m, i.e. r^2 + r(m+1) + m - s >= 0;
// conjugate form of the positive root, stable for small s - m.
double embed_lower_r(double s, double m) {
  if (s <= m) return 0.0;
  const double c = m + 1.0;
  return 2.0 * (s - m) / (c + std::sqrt(c * c + 4.0 * (s - m)));
}

}  // namespace

double qi_violation(const MapPair& mp, const QiParams& params,
                    const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  check_pair(mp, X, Y);
  double excess = -std::numeric_limits<double>::infinity();

  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t x2 = x + 1; x2 < X.size(); ++x2)
      excess = std::max(excess,
                        embedding_violation(X.dist(x, x2), Y.dist(mp.f[x], mp.f[x2]), params));
  for (std::size_t y = 0; y < Y.size(); ++y)
    for (std::size_t y2 = y + 1; y2 < Y.size(); ++y2)
      excess = std::max(excess,
                        embedding_violation(Y.dist(y, y2), X.dist(mp.g[y], mp.g[y2]), params));
  for (std::size_t x = 0; x < X.size(); ++x)
    excess = std::max(excess, X.dist(mp.g[mp.f[x]], x) - params.C);
  for (std::size_t y = 0; y < Y.size(); ++y)
    excess = std::max(excess, Y.dist(mp.f[mp.g[y]], y) - params.C);
  return excess;
}

bool verify_qi(const MapPair& mp, const QiParams& params, const FiniteMetricSpace& X,
               const FiniteMetricSpace& Y, double tol) {
  return qi_violation(mp, params, X, Y) <= tol;
}

double min_r_for_pair(const MapPair& mp, const FiniteMetricSpace& X,
                      const FiniteMetricSpace& Y) {
  check_pair(mp, X, Y);
  double r = 0.0;

  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t x2 = x + 1; x2 < X.size(); ++x2) {
      const double s = X.dist(x, x2);
      const double m = Y.dist(mp.f[x], mp.f[x2]);
      r = std::max({r, embed_upper_r(s, m), embed_lower_r(s, m)});
    }
  for (std::size_t y = 0; y < Y.size(); ++y)
    for (std::size_t y2 = y + 1; y2 < Y.size(); ++y2) {
      const double s = Y.dist(y, y2);
      const double m = X.dist(mp.g[y], mp.g[y2]);
      r = std::max({r, embed_upper_r(s, m), embed_lower_r(s, m)});
    }
  for (std::size_t x = 0; x < X.size(); ++x)
    r = std::max(r, X.dist(mp.g[mp.f[x]], x));
  for (std::size_t y = 0; y < Y.size(); ++y)
    r = std::max(r, Y.dist(mp.f[mp.g[y]], y));
  return r;
}

search::SearchResult<MapPair> qhat_exact_result(const FiniteMetricSpace& X,
                                                const FiniteMetricSpace& Y,
                                                std::uint64_t cap, int threads) {
  return search::enumerate_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return min_r_for_pair(mp, X, Y); }, cap, threads);
}

double qhat_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  std::uint64_t cap, int threads) {
  return qhat_exact_result(X, Y, cap, threads).best_value;
}

QiCertificate qhat_certificate(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                               std::uint64_t cap, int threads) {
  auto result = qhat_exact_result(X, Y, cap, threads);
  return {std::move(result.best_witness), result.best_value};
}

search::SearchResult<MapPair> qhat_search(const FiniteMetricSpace& X,
                                          const FiniteMetricSpace& Y,
                                          const search::SearchBudget& budget,
                                          int threads) {
  return search::local_search_map_pairs(
      X.size(), Y.size(),
      [&](const MapPair& mp) { return min_r_for_pair(mp, X, Y); }, budget, threads);
}

QiParams compose_params(const QiParams& p1, const QiParams& p2) {
  return QiParams(p1.A * p2.A, p1.A * p2.B + p2.A * p1.B,
                  p1.A * p2.C + p2.A * p1.C + p1.B + p2.B);
}

double triangle_bound_qhat(double r, double r2) {
  if (!(r >= 0.0 && r2 >= 0.0)) throw BadParams("triangle bound needs r, r2 >= 0");
  return 2.0 * (r + r2 + r * r2);
}

QiParams upgrade_dense_embedding(double A, double B, double Rdense) {
  if (!(A >= 1.0 && B >= 0.0 && Rdense >= 0.0))
    throw BadParams("dense-embedding upgrade needs A >= 1 and B, R >= 0");
  return QiParams(A, B + 2.0 * Rdense, A * Rdense + B);
}

double rho(double qhat_value) {
  if (!(qhat_value >= 0.0)) throw BadParams("rho needs a nonnegative distance");
  return qhat_value == 0.0 ? 0.0 : 2.0 + std::log1p(qhat_value);
}

}  // namespace qimet::qi
