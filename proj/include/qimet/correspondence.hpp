#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qimet/metric_space.hpp"

namespace qimet {

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

/// A pair of maps given as index arrays: f[i] in [0, g.size()) sends point i
/// of X into Y, g[j] in [0, f.size()) sends point j of Y into X.
struct MapPair {
  std::vector<std::uint32_t> f;
  std::vector<std::uint32_t> g;

  std::size_t nX() const noexcept { return f.size(); }
  std::size_t nY() const noexcept { return g.size(); }

  static MapPair identity(std::size_t n);

  bool operator==(const MapPair&) const = default;
};

/// Quasi-isometry constants: A >= 1 (multiplicative), B >= 0 (additive),
/// C >= 0 (closeness of the compositions to the identities).
struct QiParams {
  double A;
  double B;
  double C;

  QiParams(double a, double b, double c);
};

/// A relation between two index sets with both projections surjective.
/// Stored as a sorted pair list plus a membership bitset over the nX x nY
/// grid for O(1) pair tests.
class Correspondence {
 public:
  /// Validates surjectivity of both projections and index ranges; throws
  /// BadParams otherwise. Duplicates are dropped, pairs are sorted.
  static Correspondence from_pairs(std::size_t nX, std::size_t nY,
                                   std::vector<IndexPair> pairs);
  static Correspondence diagonal(std::size_t n);
  static Correspondence full(std::size_t nX, std::size_t nY);

  std::size_t nX() const noexcept { return nX_; }
  std::size_t nY() const noexcept { return nY_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  bool contains(std::uint32_t i, std::uint32_t j) const {
    const std::size_t cell = static_cast<std::size_t>(i) * nY_ + j;
    return (bits_[cell >> 6] >> (cell & 63)) & 1u;
  }

  Correspondence transpose() const;

  bool operator==(const Correspondence& o) const {
    return nX_ == o.nX_ && nY_ == o.nY_ && pairs_ == o.pairs_;
  }

 private:
  Correspondence(std::size_t nX, std::size_t nY, std::vector<IndexPair> pairs);

  std::size_t nX_;
  std::size_t nY_;
  std::vector<IndexPair> pairs_;
  std::vector<std::uint64_t> bits_;
};

/// Gamma_f union Gamma_g^T: the correspondence induced by a map pair.
Correspondence union_correspondence(const MapPair& mp);

/// Classical distortion of a correspondence:
/// sup |d_X(x,x') - d_Y(y,y')| over pairs of pairs. Zero for a single pair.
double dis(const Correspondence& R, const FiniteMetricSpace& X,
           const FiniteMetricSpace& Y);

/// Distortion of a map: sup |d_X(x,x') - d_Y(f(x),f(x'))|.
double dis_map(std::span<const std::uint32_t> f, const FiniteMetricSpace& X,
               const FiniteMetricSpace& Y);

/// Coupling term of a map pair: sup_{x,y} |d_X(x, g(y)) - d_Y(f(x), y)|.
/// dis of the union correspondence equals max{dis f, dis g, coupling}.
double coupling(const MapPair& mp, const FiniteMetricSpace& X,
                const FiniteMetricSpace& Y);

/// Quasi-isometric distortion: the least r >= 0 such that
///   (1/e^r)|y,y'| - e^r + 1 <= |x,x'| <= e^r|y,y'| + e^{2r} - e^r
/// for all (x,y), (x',y') in R. Computed in closed form: substituting
/// u = e^r turns each constraint into a quadratic in u whose positive root
/// bounds u from below; the result is ln of the largest root clamped to 1.
double qdis(const Correspondence& R, const FiniteMetricSpace& X,
            const FiniteMetricSpace& Y);

namespace detail {

/// Least u >= 1 with a <= u*b + u^2 - u and b/u - u + 1 <= a, for one
/// pair-of-pairs with distances a (in X) and b (in Y). Symmetric in (a, b).
double qdis_pair_scale(double a, double b);

/// Largest root of u^2 + (b-1)u - a, evaluated in a cancellation-free form.
double positive_root(double a, double b);

}  // namespace detail

}  // namespace qimet
