#pragma once

#include "bcs/types.hpp"

namespace bcs {

// Concave penalty g(x) = sum_i (x_i - x_i^2 / 2) on [0,1]^n. Value lies in
// [0, n/2].
double eval_penalty(const BoxVector& x);

// Cost functional F(x) = 1/2 ||y - A x||_2^2 + lambda * g(x).
double eval_cost(const ProblemInstance& p, const BoxVector& x, const PenaltyParams& penalty);

// Gradient of F: A^T (A x - y) + lambda * (1 - x).
Vector eval_gradient(const ProblemInstance& p, const BoxVector& x, const PenaltyParams& penalty);

struct HessianSpectrum {
  int negative_count = 0;          // strictly negative eigenvalues of A^T A - lambda I
  Vector eigenvalues;              // full spectrum, ascending
  bool lambda_below_spectrum = false;  // lambda < smallest nonzero eigenvalue of A^T A;
                                       // only then do the negatives equal -lambda
};

// Spectrum of the Hessian A^T A - lambda I. For full-row-rank A with lambda
// below the smallest nonzero eigenvalue of A^T A, the negative count is
// n - m and every negative eigenvalue equals -lambda.
HessianSpectrum hessian_negative_count(const SensingMatrix& a, const PenaltyParams& penalty);

}  // namespace bcs
