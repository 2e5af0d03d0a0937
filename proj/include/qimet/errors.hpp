#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qimet {

enum class ViolationKind {
  NotSquare,
  NonFinite,
  NonzeroDiagonal,
  AsymmetricMatrix,
  NegativeEntry,
  ZeroOffDiagonal,
  TriangleViolation,
};

/// One invariant violation found while validating a distance matrix.
/// For TriangleViolation the indices mean dist(i,j) > dist(i,k) + dist(k,j).
struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

std::string to_string(const Violation& v);

class MetricValidationError : public std::runtime_error {
 public:
  explicit MetricValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t cap);
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonpositiveAlpha : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BadExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class BadParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qimet
