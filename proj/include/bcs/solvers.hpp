#pragma once

#include <optional>

#include "bcs/types.hpp"

namespace bcs {

struct AdmmConfig {
  double rho = 1.0;                  // augmented-Lagrangian parameter (implementation default)
  double residual_tolerance = 1e-6;  // stop when ||r||_2^2 + ||s||_2^2 falls below
  int max_iterations = 10000;

  void validate() const {
    if (!(rho > 0.0)) fail(ErrorCode::kDomain, "rho must be positive");
    if (!(residual_tolerance > 0.0))
      fail(ErrorCode::kDomain, "residual tolerance must be positive");
    if (max_iterations < 1) fail(ErrorCode::kDomain, "max_iterations must be >= 1");
  }
};

struct SolverResult {
  Vector estimate;
  int iterations = 0;
  bool converged = false;
  double final_primal_sq = 0.0;
  double final_dual_sq = 0.0;
};

// min_{x in [0,1]^n} 1/2 ||y - A x||_2^2 + lambda * sum_i w_i x_i, solved by
// consensus ADMM; the returned estimate is the final consensus variable and
// lies in [0,1]^n exactly. `z0` warm-starts the consensus variable (zero when
// absent).
SolverResult solve_weighted_box_lasso(const ProblemInstance& p, const PenaltyParams& penalty,
                                      const Vector& weights, const AdmmConfig& cfg,
                                      const std::optional<Vector>& z0 = std::nullopt);

// min_x 1/2 ||y - A x||_2^2 + lambda ||x||_1 (unconstrained). Soft
// thresholding produces exact zeros in the returned consensus variable.
SolverResult solve_lasso(const ProblemInstance& p, const PenaltyParams& penalty,
                         const AdmmConfig& cfg);

// min ||x||_1 subject to A x = y. Requires full row rank for the projection
// step. The consensus variable is returned.
SolverResult solve_basis_pursuit(const ProblemInstance& p, const AdmmConfig& cfg);

// Appends the row 1^T x = k to the system: A gains an all-ones row, y gains
// the entry k. The new instance has known_k cleared, so applying the
// augmentation twice is rejected as a precondition error.
ProblemInstance augment_known_k(const ProblemInstance& p);

}  // namespace bcs
