#pragma once

#include <cstdint>
#include <vector>

#include "bcs/types.hpp"

namespace bcs {

inline constexpr int kMaxEnumerationN = 20;      // 2^n sweeps
inline constexpr int kMaxGeneralPositionN = 12;  // 3^n sweeps

struct ProbeConfig {
  double epsilon = 1e-3;
  long long trials = 10000;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      fail(ErrorCode::kDomain, "probe epsilon must lie in (0,1)");
    if (trials < 0) fail(ErrorCode::kDomain, "probe trials must be >= 0");
  }
};

struct ProbeOutcome {
  bool passed = false;
  double worst_margin = 0.0;  // min over trials of F(x~+h) - F(x~)
};

struct BruteForceOutcome {
  BinarySignal argmin;
  double value = 0.0;
  bool unique = false;
};

struct DescentOutcome {
  bool decreases = false;
  double delta = 0.0;  // F(z - eps (z - x~)) - F(z)
};

// True iff the smallest eigenvalue of A_cols^T A_cols - lambda I is positive
// for the selected column set (at most m columns; beyond that the shifted
// Gram is never positive definite).
bool check_subset_gram_positive(const SensingMatrix& a, double lambda,
                                const std::vector<Index>& columns);

// General position: no signed subset sum of columns (signs in {0,+1,-1},
// excluding the pattern selecting only column j itself) equals +-v_j within
// 1e-9. Exhaustive over 3^n patterns, so n must not exceed max_n.
bool check_general_position(const SensingMatrix& a, int max_n = kMaxGeneralPositionN);

// Local-minimum probe: random admissible increments around the ground truth
// (h_i in [-eps,0] on the support, [0,eps] off it) must all raise the cost.
ProbeOutcome probe_local_min(const ProblemInstance& p, double lambda, const ProbeConfig& cfg);

// Exhaustive minimum of F over {0,1}^n. Ties are broken toward the lowest
// binary code (sum z_i 2^i); uniqueness is decided with a 1e-12 value
// tolerance.
BruteForceOutcome brute_force_binary_min(const ProblemInstance& p, double lambda);

// Moves from the binary candidate z toward the truth by eps and reports
// whether the cost strictly decreases. eps in [0,1]; eps = 0 degenerates to
// delta = 0.
DescentOutcome descent_direction_check(const ProblemInstance& p, const BinarySignal& z,
                                       double lambda, double epsilon);

// Enumerated guarantee bound: min over binary z != truth of
// ||A(z - x~)||_2^2 / ||z - x~||_2^2. Below this value the truth is the
// unique binary minimizer and every wrong candidate admits a descent
// direction.
double lambda_upper_bound(const ProblemInstance& p);

}  // namespace bcs
