#pragma once

#include "qimet/search.hpp"

namespace qimet::qi {

/// A map pair together with the minimal r for which it witnesses a
/// (1+r, r, r)-quasi-isometry.
struct QiCertificate {
  MapPair mp;
  double r = 0.0;
};

/// Largest constraint excess of the map pair against the given constants:
/// <= 0 means (f, g) are (A,B)-quasi-isometric embeddings and both
/// compositions are C-close to the identities (closeness is non-strict so
/// minima are attained on finite instances).
double qi_violation(const MapPair& mp, const QiParams& params,
                    const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

bool verify_qi(const MapPair& mp, const QiParams& params, const FiniteMetricSpace& X,
               const FiniteMetricSpace& Y, double tol = 0.0);

/// Minimal r >= 0 with verify_qi(mp, (1+r, r, r)). Each constraint family
/// has a closed-form lower bound on r (linear for the upper embedding
/// bound and the closeness terms, a quadratic root for the lower embedding
/// bound); the result is their maximum.
double min_r_for_pair(const MapPair& mp, const FiniteMetricSpace& X,
                      const FiniteMetricSpace& Y);

/// Quasi-isometric distance: the attained minimum of min_r_for_pair over
/// all map pairs.
search::SearchResult<MapPair> qhat_exact_result(
    const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
    std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);
double qhat_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);

/// The optimal witness pair together with its minimal r.
QiCertificate qhat_certificate(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                               std::uint64_t cap = search::kDefaultMaxEvals,
                               int threads = 1);

/// Annealing upper bound on the quasi-isometric distance.
search::SearchResult<MapPair> qhat_search(const FiniteMetricSpace& X,
                                          const FiniteMetricSpace& Y,
                                          const search::SearchBudget& budget,
                                          int threads = 1);

/// Constants of a composed quasi-isometry:
/// (A,B,C) then (A',B',C') gives (AA', AB' + A'B, AC' + A'C + B + B').
QiParams compose_params(const QiParams& p1, const QiParams& p2);

/// Generalized triangle bound 2(r + r2 + r*r2) on the quasi-isometric
/// distance of the outer pair.
double triangle_bound_qhat(double r, double r2);

/// Upgrades an (A, B)-quasi-isometric embedding with R-dense image to full
/// quasi-isometry constants (A, B + 2R, A*R + B).
QiParams upgrade_dense_embedding(double A, double B, double Rdense);

/// The generalized metric 2 + ln(qhat + 1), and 0 at qhat = 0.
double rho(double qhat_value);

}  // namespace qimet::qi
