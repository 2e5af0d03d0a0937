#pragma once

#include "qimet/search.hpp"

namespace qimet::dmetric {

/// q-dis of the union correspondence of a map pair, without materializing
/// the union. Minimizing this over map pairs equals minimizing q-dis over
/// all correspondences: each correspondence contains a union-form
/// sub-correspondence and q-dis is monotone under adding pairs.
double qdis_of_map_pair(const MapPair& mp, const FiniteMetricSpace& X,
                        const FiniteMetricSpace& Y);

/// The metric D: attained minimum of q-dis over correspondences, computed
/// over map pairs. The witness is the optimal union correspondence.
search::SearchResult<Correspondence> d_exact_result(
    const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
    std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);
double d_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
               std::uint64_t cap = search::kDefaultMaxEvals, int threads = 1);

/// Annealing upper bound on D.
search::SearchResult<Correspondence> d_search(const FiniteMetricSpace& X,
                                              const FiniteMetricSpace& Y,
                                              const search::SearchBudget& budget,
                                              int threads = 1);

/// Relational composition {(x,z) | exists y with (x,y) in R, (y,z) in S}.
/// q-dis is subadditive under this composition.
Correspondence compose_correspondences(const Correspondence& R, const Correspondence& S);

/// D(X,Y) <= ln(1 + 2r) when the quasi-isometric distance is r.
double bound_d_from_qhat(double r);

/// qhat(X,Y) <= e^{2r} - e^r when D(X,Y) = r.
double bound_qhat_from_d(double r);

}  // namespace qimet::dmetric
