#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bcs/errors.hpp"

namespace bcs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Entries within this band of [0,1] are clamped onto the box; anything
// further out is a domain error.
inline constexpr double kBoxTolerance = 1e-12;

// Dense m x n measurement operator, m <= n (equality allowed for degenerate
// square systems).
struct SensingMatrix {
  Matrix entries;

  SensingMatrix() = default;
  explicit SensingMatrix(Matrix a) : entries(std::move(a)) {
    if (entries.rows() == 0 || entries.cols() == 0)
      fail(ErrorCode::kShape, "sensing matrix must be non-empty");
    if (entries.rows() > entries.cols())
      fail(ErrorCode::kShape, "sensing matrix needs m <= n");
    if (!entries.allFinite())
      fail(ErrorCode::kDomain, "sensing matrix entries must be finite");
  }

  Index m() const { return entries.rows(); }
  Index n() const { return entries.cols(); }
};

// Vector with entries in {0,1}; support and sparsity are fixed at
// construction.
struct BinarySignal {
  Vector values;
  std::vector<Index> support;

  BinarySignal() = default;
  explicit BinarySignal(Vector v) : values(std::move(v)) {
    support.reserve(static_cast<std::size_t>(values.size()));
    for (Index i = 0; i < values.size(); ++i) {
      if (values[i] == 1.0) {
        support.push_back(i);
      } else if (values[i] != 0.0) {
        fail(ErrorCode::kDomain, "binary signal entries must be exactly 0 or 1");
      }
    }
  }

  static BinarySignal from_support(Index n, const std::vector<Index>& support) {
    Vector v = Vector::Zero(n);
    for (Index i : support) {
      if (i < 0 || i >= n) fail(ErrorCode::kShape, "support index out of range");
      v[i] = 1.0;
    }
    return BinarySignal(std::move(v));
  }

  Index size() const { return values.size(); }
  Index sparsity() const { return static_cast<Index>(support.size()); }
};

// Point of the closed box [0,1]^n.
struct BoxVector {
  Vector values;

  BoxVector() = default;
  explicit BoxVector(Vector v) : values(std::move(v)) {
    for (Index i = 0; i < values.size(); ++i) {
      double& e = values[i];
      if (e < 0.0) {
        if (e < -kBoxTolerance)
          fail(ErrorCode::kDomain, "box vector entry below 0");
        e = 0.0;
      } else if (e > 1.0) {
        if (e > 1.0 + kBoxTolerance)
          fail(ErrorCode::kDomain, "box vector entry above 1");
        e = 1.0;
      }
    }
  }

  static BoxVector zeros(Index n) { return BoxVector(Vector::Zero(n)); }

  Index size() const { return values.size(); }
};

struct PenaltyParams {
  double lambda;

  explicit PenaltyParams(double lambda_in) : lambda(lambda_in) {
    if (!(lambda > 0.0))
      fail(ErrorCode::kDomain, "penalty parameter lambda must be positive");
  }
};

// Measurement system y = A x, with optional ground truth and known sparsity.
// `seed` records how the instance was generated (0 when unknown); it is
// carried only for serialization and hashing provenance.
struct ProblemInstance {
  SensingMatrix matrix;
  Vector measurements;
  std::optional<BinarySignal> truth;
  std::optional<int> known_k;
  std::uint64_t seed = 0;

  ProblemInstance() = default;
  ProblemInstance(SensingMatrix a, Vector y, std::optional<BinarySignal> x_true = std::nullopt,
                  std::optional<int> k = std::nullopt, std::uint64_t seed_in = 0)
      : matrix(std::move(a)),
        measurements(std::move(y)),
        truth(std::move(x_true)),
        known_k(k),
        seed(seed_in) {
    if (measurements.size() != matrix.m())
      fail(ErrorCode::kShape, "measurement vector length must equal row count");
    if (truth) {
      if (truth->size() != matrix.n())
        fail(ErrorCode::kShape, "ground truth length must equal column count");
      if (truth->sparsity() > matrix.m())
        fail(ErrorCode::kPrecondition, "ground truth sparsity exceeds measurement count");
    }
    if (known_k && *known_k <= 0)
      fail(ErrorCode::kDomain, "known sparsity must be positive");
  }

  Index m() const { return matrix.m(); }
  Index n() const { return matrix.n(); }
};

}  // namespace bcs
