#include "qimet/metric_space.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace qimet {

namespace {

std::string kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::NotSquare: return "NotSquare";
    case ViolationKind::NonFinite: return "NonFinite";
    case ViolationKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ViolationKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ViolationKind::NegativeEntry: return "NegativeEntry";
    case ViolationKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ViolationKind::TriangleViolation: return "TriangleViolation";
  }
  return "Unknown";
}

std::string describe_all(const std::vector<Violation>& vs) {
  std::ostringstream out;
  out << "metric validation failed (" << vs.size() << " violation"
      << (vs.size() == 1 ? "" : "s") << "):";
  for (const auto& v : vs) out << "\n  " << to_string(v);
  return out.str();
}

}  // namespace

std::string to_string(const Violation& v) {
  std::ostringstream out;
  out << kind_name(v.kind);
  switch (v.kind) {
    case ViolationKind::TriangleViolation:
      out << "(" << v.i << "," << v.j << "," << v.k << "): dist(" << v.i << ","
          << v.j << ") = " << v.lhs << " > " << v.rhs;
      break;
    case ViolationKind::NotSquare:
      out << ": row " << v.i << " has " << v.j << " entries, expected " << v.k;
      break;
    default:
      out << "(" << v.i << "," << v.j << "): " << v.lhs;
      break;
  }
  return out.str();
}

MetricValidationError::MetricValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe_all(violations)),
      violations_(std::move(violations)) {}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t cap)
    : std::runtime_error("search budget exceeded: " + std::to_string(required) +
                         " configurations required, cap is " + std::to_string(cap)),
      required_(required),
      cap_(cap) {}

namespace detail {

std::vector<Violation> check_matrix(std::span<const double> dist, std::size_t n,
                                    double tol, bool allow_zero_off_diagonal) {
  std::vector<Violation> out;
  auto at = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(at(i, j)))
        out.push_back({ViolationKind::NonFinite, i, j, 0, at(i, j), 0.0});
  if (!out.empty()) return out;  // further checks assume finite entries

  for (std::size_t i = 0; i < n; ++i)
    if (at(i, i) != 0.0)
      out.push_back({ViolationKind::NonzeroDiagonal, i, i, 0, at(i, i), 0.0});

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i))
        out.push_back({ViolationKind::AsymmetricMatrix, i, j, 0, at(i, j), at(j, i)});
      if (at(i, j) < 0.0)
        out.push_back({ViolationKind::NegativeEntry, i, j, 0, at(i, j), 0.0});
      else if (!allow_zero_off_diagonal && at(i, j) == 0.0)
        out.push_back({ViolationKind::ZeroOffDiagonal, i, j, 0, 0.0, 0.0});
    }

  // dist(i,j) > dist(i,k) + dist(k,j): every violated triple is reported.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double lhs = at(i, j);
        const double rhs = at(i, k) + at(k, j);
        if (lhs > rhs + tol)
          out.push_back({ViolationKind::TriangleViolation, i, j, k, lhs, rhs});
      }
    }
  return out;
}

std::vector<double> flatten_square(const Matrix& rows, std::size_t& n) {
  n = rows.size();
  if (n == 0)
    throw MetricValidationError({{ViolationKind::NotSquare, 0, 0, 0, 0.0, 0.0}});
  std::vector<Violation> shape;
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      shape.push_back({ViolationKind::NotSquare, i, rows[i].size(), n, 0.0, 0.0});
  if (!shape.empty()) throw MetricValidationError(std::move(shape));

  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  return labels;
}

}  // namespace detail

namespace {

std::vector<std::string> resolve_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) return detail::default_labels(n);
  if (labels.size() != n)
    throw SizeMismatch("label count " + std::to_string(labels.size()) +
                       " does not match point count " + std::to_string(n));
  return labels;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<double> dist, std::size_t n,
                                     std::vector<std::string> labels)
    : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {}

FiniteMetricSpace FiniteMetricSpace::validated(const Matrix& rows,
                                               std::vector<std::string> labels,
                                               double tol) {
  std::size_t n = 0;
  auto flat = detail::flatten_square(rows, n);
  return validated_flat(std::move(flat), n, std::move(labels), tol);
}

FiniteMetricSpace FiniteMetricSpace::validated_flat(std::vector<double> dist,
                                                    std::size_t n,
                                                    std::vector<std::string> labels,
                                                    double tol) {
  if (dist.size() != n * n)
    throw MetricValidationError({{ViolationKind::NotSquare, 0, dist.size(), n * n, 0.0, 0.0}});
  auto violations = detail::check_matrix(dist, n, tol, /*allow_zero_off_diagonal=*/false);
  if (!violations.empty()) throw MetricValidationError(std::move(violations));
  return FiniteMetricSpace(std::move(dist), n, resolve_labels(std::move(labels), n));
}

double FiniteMetricSpace::diameter() const noexcept {
  double d = 0.0;
  for (double v : dist_) d = std::max(d, v);
  return d;
}

Matrix FiniteMetricSpace::rows() const {
  Matrix out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = dist(i, j);
  return out;
}

PseudoMetricSpace::PseudoMetricSpace(std::vector<double> dist, std::size_t n,
                                     std::vector<std::string> labels)
    : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {}

PseudoMetricSpace PseudoMetricSpace::validated(const Matrix& rows,
                                               std::vector<std::string> labels,
                                               double tol) {
  std::size_t n = 0;
  auto flat = detail::flatten_square(rows, n);
  return validated_flat(std::move(flat), n, std::move(labels), tol);
}

PseudoMetricSpace PseudoMetricSpace::validated_flat(std::vector<double> dist,
                                                    std::size_t n,
                                                    std::vector<std::string> labels,
                                                    double tol) {
  if (dist.size() != n * n)
    throw MetricValidationError({{ViolationKind::NotSquare, 0, dist.size(), n * n, 0.0, 0.0}});
  auto violations = detail::check_matrix(dist, n, tol, /*allow_zero_off_diagonal=*/true);
  if (!violations.empty()) throw MetricValidationError(std::move(violations));
  return PseudoMetricSpace(std::move(dist), n, resolve_labels(std::move(labels), n));
}

PointedSpace::PointedSpace(FiniteMetricSpace s, std::size_t base_index)
    : space(std::move(s)), base(base_index) {
  if (base >= space.size())
    throw OutOfRange("base point index " + std::to_string(base) +
                     " out of range for " + std::to_string(space.size()) + " points");
}

FiniteMetricSpace validate(const Matrix& rows, double tol) {
  return FiniteMetricSpace::validated(rows, {}, tol);
}

FiniteMetricSpace quotient(const PseudoMetricSpace& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.dist(i, j) == 0.0) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  // Classes ordered by smallest member index.
  std::vector<std::size_t> class_of(n);
  std::vector<std::size_t> representative;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == i) {
      class_of[i] = representative.size();
      representative.push_back(i);
    } else {
      class_of[i] = class_of[find(i)];
    }
  }

  const std::size_t m = representative.size();
  std::vector<double> dist(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      dist[a * m + b] = p.dist(representative[a], representative[b]);

#ifndef NDEBUG
  // Representative independence: any member yields the same induced distance.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[class_of[i] * m + class_of[j]];
      assert(std::abs(p.dist(i, j) - d) <= 1e-9);
    }
#endif

  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < n; ++i) {
    auto& label = labels[class_of[i]];
    if (!label.empty()) label += "+";
    label += p.labels()[i];
  }

  return FiniteMetricSpace::validated_flat(std::move(dist), m, std::move(labels));
}

double diameter(const FiniteMetricSpace& s) { return s.diameter(); }

}  // namespace qimet
