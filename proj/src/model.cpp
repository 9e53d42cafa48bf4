#include "bcs/model.hpp"

#include <Eigen/Eigenvalues>

namespace bcs {

double eval_penalty(const BoxVector& x) {
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double e = x.values[i];
    sum += e - 0.5 * e * e;
  }
  return sum;
}

static void check_shapes(const ProblemInstance& p, const BoxVector& x) {
  if (x.size() != p.n())
    fail(ErrorCode::kShape, "candidate length does not match column count");
}

double eval_cost(const ProblemInstance& p, const BoxVector& x, const PenaltyParams& penalty) {
  check_shapes(p, x);
  const Vector residual = p.measurements - p.matrix.entries * x.values;
  return 0.5 * residual.squaredNorm() + penalty.lambda * eval_penalty(x);
}

Vector eval_gradient(const ProblemInstance& p, const BoxVector& x, const PenaltyParams& penalty) {
  check_shapes(p, x);
  const Vector residual = p.matrix.entries * x.values - p.measurements;
  return p.matrix.entries.transpose() * residual +
         penalty.lambda * (Vector::Ones(p.n()) - x.values);
}

HessianSpectrum hessian_negative_count(const SensingMatrix& a, const PenaltyParams& penalty) {
  const Index n = a.n();
  const Matrix gram = a.entries.transpose() * a.entries;
  Matrix hessian = gram;
  hessian.diagonal().array() -= penalty.lambda;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(hessian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "eigendecomposition failed");

  HessianSpectrum out;
  out.eigenvalues = solver.eigenvalues();  // ascending

  for (Index i = 0; i < n; ++i)
    if (out.eigenvalues[i] < 0.0) ++out.negative_count;

  // Smallest nonzero eigenvalue of A^T A = smallest Hessian eigenvalue above
  // -lambda + rank tolerance.
  const double scale = std::max(std::abs(out.eigenvalues[0]), std::abs(out.eigenvalues[n - 1]));
  const double rank_tol = static_cast<double>(n) * scale * 1e-14;
  double smallest_nonzero = -1.0;
  for (Index i = 0; i < n; ++i) {
    const double gram_eig = out.eigenvalues[i] + penalty.lambda;
    if (gram_eig > rank_tol) {
      smallest_nonzero = gram_eig;
      break;
    }
  }
  out.lambda_below_spectrum = smallest_nonzero > 0.0 && penalty.lambda < smallest_nonzero;
  return out;
}

}  // namespace bcs
