#include "bcs/solvers.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace bcs {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Shared ADMM driver. The x-update is x = solve(rhs_base + rho (z - u)); the
// z-update is supplied by the caller and defines the regularizer/constraint.
template <typename XUpdate, typename ZUpdate>
SolverResult run_admm(Index n, const AdmmConfig& cfg, const Vector& z_init,
                      const XUpdate& x_update, const ZUpdate& z_update) {
  cfg.validate();
  const double rho = cfg.rho;

  Vector z = z_init;
  Vector u = Vector::Zero(n);
  Vector x(n), z_prev(n);

  SolverResult out;
  int it = 0;
  double r_sq = 0.0, s_sq = 0.0;
  bool converged = false;
  while (it < cfg.max_iterations) {
    ++it;
    x = x_update(z, u);
    z_prev.swap(z);
    z = z_update(x + u);
    u += x - z;

    r_sq = (x - z).squaredNorm();
    s_sq = rho * rho * (z - z_prev).squaredNorm();
    if (!std::isfinite(r_sq + s_sq))
      fail(ErrorCode::kNumerical, "ADMM iterates diverged to NaN/Inf");
    if (r_sq + s_sq < cfg.residual_tolerance) {
      converged = true;
      break;
    }
  }

  out.estimate = std::move(z);
  out.iterations = it;
  out.converged = converged;
  out.final_primal_sq = r_sq;
  out.final_dual_sq = s_sq;
  return out;
}

}  // namespace

SolverResult solve_weighted_box_lasso(const ProblemInstance& p, const PenaltyParams& penalty,
                                      const Vector& weights, const AdmmConfig& cfg,
                                      const std::optional<Vector>& z0) {
  const Index n = p.n();
  if (weights.size() != n)
    fail(ErrorCode::kShape, "weight vector length does not match column count");
  if (!weights.allFinite() || (weights.array() < 0.0).any())
    fail(ErrorCode::kPrecondition, "weights must be finite and nonnegative");
  if (z0 && z0->size() != n)
    fail(ErrorCode::kShape, "warm-start length does not match column count");
  cfg.validate();

  const Matrix& a = p.matrix.entries;
  Matrix normal = a.transpose() * a;
  normal.diagonal().array() += cfg.rho;
  const Eigen::LLT<Matrix> chol(normal);
  if (chol.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "Cholesky factorization of A^T A + rho I failed");

  const Vector rhs_base = a.transpose() * p.measurements;
  const Vector shift = (penalty.lambda / cfg.rho) * weights;
  const double rho = cfg.rho;

  Vector z_init = z0 ? *z0 : Vector::Zero(n);
  return run_admm(
      n, cfg, z_init,
      [&](const Vector& z, const Vector& u) -> Vector {
        return chol.solve(rhs_base + rho * (z - u));
      },
      [&](const Vector& v) -> Vector {
        return (v - shift).cwiseMax(0.0).cwiseMin(1.0);
      });
}

SolverResult solve_lasso(const ProblemInstance& p, const PenaltyParams& penalty,
                         const AdmmConfig& cfg) {
  const Index n = p.n();
  cfg.validate();

  const Matrix& a = p.matrix.entries;
  Matrix normal = a.transpose() * a;
  normal.diagonal().array() += cfg.rho;
  const Eigen::LLT<Matrix> chol(normal);
  if (chol.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "Cholesky factorization of A^T A + rho I failed");

  const Vector rhs_base = a.transpose() * p.measurements;
  const double thresh = penalty.lambda / cfg.rho;
  const double rho = cfg.rho;

  return run_admm(
      n, cfg, Vector::Zero(n),
      [&](const Vector& z, const Vector& u) -> Vector {
        return chol.solve(rhs_base + rho * (z - u));
      },
      [&](const Vector& v) -> Vector {
        Vector z(v.size());
        for (Index i = 0; i < v.size(); ++i) z[i] = soft_threshold(v[i], thresh);
        return z;
      });
}

SolverResult solve_basis_pursuit(const ProblemInstance& p, const AdmmConfig& cfg) {
  const Index n = p.n();
  cfg.validate();

  const Matrix& a = p.matrix.entries;
  const Matrix gram_t = a * a.transpose();  // m x m
  const Eigen::LLT<Matrix> chol(gram_t);
  if (chol.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "A A^T factorization failed; A must have full row rank");
  // LLT succeeds on barely-singular matrices; reject those too.
  {
    const Vector d = chol.matrixLLT().diagonal();
    const double dmax = d.maxCoeff();
    if (!(d.minCoeff() > dmax * 1e-13))
      fail(ErrorCode::kNumerical, "A A^T is numerically rank deficient");
  }

  const double thresh = 1.0 / cfg.rho;

  return run_admm(
      n, cfg, Vector::Zero(n),
      [&](const Vector& z, const Vector& u) -> Vector {
        // Projection onto {x : A x = y}.
        const Vector v = z - u;
        return v - a.transpose() * chol.solve(a * v - p.measurements);
      },
      [&](const Vector& v) -> Vector {
        Vector z(v.size());
        for (Index i = 0; i < v.size(); ++i) z[i] = soft_threshold(v[i], thresh);
        return z;
      });
}

ProblemInstance augment_known_k(const ProblemInstance& p) {
  if (!p.known_k)
    fail(ErrorCode::kPrecondition, "augment_known_k requires known_k to be set");
  const Index m = p.m();
  const Index n = p.n();
  if (m + 1 > n)
    fail(ErrorCode::kShape, "augmentation would make the system overdetermined");

  Matrix a(m + 1, n);
  a.topRows(m) = p.matrix.entries;
  a.row(m).setOnes();

  Vector y(m + 1);
  y.head(m) = p.measurements;
  y[m] = static_cast<double>(*p.known_k);

  return ProblemInstance(SensingMatrix(std::move(a)), std::move(y), p.truth, std::nullopt,
                         p.seed);
}

}  // namespace bcs
