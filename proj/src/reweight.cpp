#include "bcs/reweight.hpp"

#include <string>

#include "bcs/model.hpp"

namespace bcs {

RecoveryResult rw(const ProblemInstance& p, const RwConfig& cfg, const BoxVector& x0) {
  cfg.validate();
  if (x0.size() != p.n())
    fail(ErrorCode::kShape, "initial point length does not match column count");

  const PenaltyParams penalty(cfg.lambda);
  RecoveryResult out;
  out.estimate = x0;
  out.per_stage_iterations.reserve(static_cast<std::size_t>(cfg.t_stop));
  out.stage_costs.reserve(static_cast<std::size_t>(cfg.t_stop));

  for (int t = 0; t < cfg.t_stop; ++t) {
    const Vector weights = Vector::Ones(p.n()) - out.estimate.values;
    SolverResult stage = solve_weighted_box_lasso(p, penalty, weights, cfg.admm);
    out.estimate = BoxVector(std::move(stage.estimate));
    out.per_stage_iterations.push_back(stage.iterations);
    out.total_admm_iterations += stage.iterations;
    out.stage_costs.push_back(eval_cost(p, out.estimate, penalty));
  }
  return out;
}

bool check_candidate(const BoxVector& estimate, const ProblemInstance& p, double binary_tol,
                     double residual_tol) {
  for (Index i = 0; i < estimate.size(); ++i) {
    const double e = estimate.values[i];
    if (std::min(e, 1.0 - e) > binary_tol) return false;
  }
  const BinarySignal z = quantize(estimate);
  const double residual_sq = (p.matrix.entries * z.values - p.measurements).squaredNorm();
  return residual_sq <= residual_tol;
}

RecoveryResult rwr(const ProblemInstance& p, const RwrConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const Index n = p.n();
  const double residual_tol =
      cfg.residual_tolerance * (1.0 + p.measurements.squaredNorm());

  RecoveryResult total;
  BoxVector x0 = BoxVector::zeros(n);
  for (int attempt = 0;; ++attempt) {
    RecoveryResult run;
    try {
      run = rw(p, cfg.rw, x0);
    } catch (const Error& e) {
      fail(e.code(), "attempt " + std::to_string(attempt) + ": " + e.what());
    }

    total.estimate = run.estimate;
    total.total_admm_iterations += run.total_admm_iterations;
    total.per_stage_iterations.insert(total.per_stage_iterations.end(),
                                      run.per_stage_iterations.begin(),
                                      run.per_stage_iterations.end());
    total.stage_costs.insert(total.stage_costs.end(), run.stage_costs.begin(),
                             run.stage_costs.end());
    total.restarts_used = attempt;
    total.accepted = check_candidate(total.estimate, p, cfg.binary_tolerance, residual_tol);

    if (total.accepted || attempt == cfg.max_restarts) return total;

    Vector fresh(n);
    for (Index i = 0; i < n; ++i) fresh[i] = rng.uniform01();
    x0 = BoxVector(std::move(fresh));
  }
}

BinarySignal quantize(const BoxVector& estimate) { return quantize_real(estimate.values); }

BinarySignal quantize_real(const Vector& estimate) {
  Vector z(estimate.size());
  for (Index i = 0; i < estimate.size(); ++i) z[i] = estimate[i] >= 0.5 ? 1.0 : 0.0;
  return BinarySignal(std::move(z));
}

}  // namespace bcs
