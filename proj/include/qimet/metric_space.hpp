#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qimet/errors.hpp"

namespace qimet {

/// Default additive tolerance for triangle-inequality validation. Absorbs
/// floating-point noise in generated Euclidean distances (the polyline
/// chain's chord lengths are irrational).
inline constexpr double kValidationTol = 1e-9;

using Matrix = std::vector<std::vector<double>>;

namespace detail {

/// Checks all metric-space invariants on a flat row-major matrix and returns
/// every violation found. With allow_zero_off_diagonal the pseudometric
/// variant is checked (zero distances between distinct points permitted).
std::vector<Violation> check_matrix(std::span<const double> dist, std::size_t n,
                                    double tol, bool allow_zero_off_diagonal);

/// Flattens a square nested matrix; reports NotSquare / empty input.
std::vector<double> flatten_square(const Matrix& rows, std::size_t& n);

std::vector<std::string> default_labels(std::size_t n);

}  // namespace detail

/// A finite metric space: a validated symmetric distance matrix with point
/// labels. Immutable after construction; safe to share across threads.
class FiniteMetricSpace {
 public:
  /// Validates all invariants (zero diagonal, symmetry, positivity off the
  /// diagonal, triangle inequality within tol). Throws MetricValidationError
  /// listing every violated entry/triple otherwise.
  static FiniteMetricSpace validated(const Matrix& rows,
                                     std::vector<std::string> labels = {},
                                     double tol = kValidationTol);
  static FiniteMetricSpace validated_flat(std::vector<double> dist, std::size_t n,
                                          std::vector<std::string> labels = {},
                                          double tol = kValidationTol);

  std::size_t size() const noexcept { return n_; }
  double dist(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::span<const double> flat() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Largest pairwise distance; 0 for a single point.
  double diameter() const noexcept;

  Matrix rows() const;

 private:
  FiniteMetricSpace(std::vector<double> dist, std::size_t n,
                    std::vector<std::string> labels);

  std::size_t n_;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

/// Like FiniteMetricSpace but distinct points may sit at distance zero.
class PseudoMetricSpace {
 public:
  static PseudoMetricSpace validated(const Matrix& rows,
                                     std::vector<std::string> labels = {},
                                     double tol = kValidationTol);
  static PseudoMetricSpace validated_flat(std::vector<double> dist, std::size_t n,
                                          std::vector<std::string> labels = {},
                                          double tol = kValidationTol);

  std::size_t size() const noexcept { return n_; }
  double dist(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::span<const double> flat() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  PseudoMetricSpace(std::vector<double> dist, std::size_t n,
                    std::vector<std::string> labels);

  std::size_t n_;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

/// A metric space with a distinguished base point.
struct PointedSpace {
  FiniteMetricSpace space;
  std::size_t base;

  PointedSpace(FiniteMetricSpace s, std::size_t base_index);
};

/// Free-function form of FiniteMetricSpace::validated.
FiniteMetricSpace validate(const Matrix& rows, double tol = kValidationTol);

/// Merges points at distance zero into classes (union-find over the
/// zero-distance relation). The induced distance is taken from the first
/// member of each class; well-definedness follows from the pseudometric
/// triangle inequality and is asserted in debug builds. Classes are ordered
/// by smallest member index and labels are concatenated with '+'.
FiniteMetricSpace quotient(const PseudoMetricSpace& p);

double diameter(const FiniteMetricSpace& s);

}  // namespace qimet
