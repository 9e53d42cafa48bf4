#pragma once

#include <vector>

#include "bcs/rng.hpp"
#include "bcs/solvers.hpp"
#include "bcs/types.hpp"

namespace bcs {

struct RwConfig {
  int t_stop = 4;
  double lambda = 1e-2;
  AdmmConfig admm;

  void validate() const {
    if (t_stop < 1) fail(ErrorCode::kDomain, "t_stop must be >= 1");
    if (!(lambda > 0.0)) fail(ErrorCode::kDomain, "lambda must be positive");
    admm.validate();
  }
};

struct RwrConfig {
  RwConfig rw;
  int max_restarts = 20;         // 0 means plain RW from zero
  double binary_tolerance = 1e-3;
  // Scale of the candidate residual test; the acceptance threshold on
  // ||A z - y||_2^2 is residual_tolerance * (1 + ||y||_2^2).
  double residual_tolerance = 1e-6;

  void validate() const {
    rw.validate();
    if (max_restarts < 0) fail(ErrorCode::kDomain, "max_restarts must be >= 0");
    if (!(binary_tolerance > 0.0)) fail(ErrorCode::kDomain, "binary tolerance must be positive");
    if (!(residual_tolerance > 0.0)) fail(ErrorCode::kDomain, "residual tolerance must be positive");
  }
};

struct RecoveryResult {
  BoxVector estimate;
  bool accepted = false;  // candidate check passed (evaluated by rwr only)
  int restarts_used = 0;
  long long total_admm_iterations = 0;
  std::vector<int> per_stage_iterations;
  std::vector<double> stage_costs;  // F(x(t)) after each reweighting stage
};

// Iterative reweighting: t_stop cycles of w_i = 1 - x_i followed by the
// weighted box lasso. Every stage solves its subproblem from scratch, so the
// reported iteration totals reflect full per-stage solves.
RecoveryResult rw(const ProblemInstance& p, const RwConfig& cfg, const BoxVector& x0);

// True iff every entry is within binary_tol of {0,1} and the rounding z
// satisfies ||A z - y||_2^2 <= residual_tol. Such a z is the unique binary
// minimizer, hence the exact signal on noise-free instances.
bool check_candidate(const BoxVector& estimate, const ProblemInstance& p, double binary_tol,
                     double residual_tol);

// RW with random restarts: the first attempt starts at zero; while the
// candidate check fails and the restart budget remains, RW reruns from a
// uniform random point of the box. Iteration counts accumulate across all
// attempts.
RecoveryResult rwr(const ProblemInstance& p, const RwrConfig& cfg, RandomStream& rng);

// Entrywise nearest element of {0,1}; ties at 0.5 round to 1.
BinarySignal quantize(const BoxVector& estimate);

// Same rounding applied to an unconstrained estimate (values are mapped to
// the nearest of {0,1}, so anything >= 0.5 becomes 1).
BinarySignal quantize_real(const Vector& estimate);

}  // namespace bcs
