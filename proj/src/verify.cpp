#include "bcs/verify.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <limits>

#include "bcs/model.hpp"
#include "bcs/rng.hpp"

namespace bcs {

bool check_subset_gram_positive(const SensingMatrix& a, double lambda,
                        const std::vector<Index>& columns) {
  if (static_cast<Index>(columns.size()) > a.m())
    fail(ErrorCode::kPrecondition,
         "the shifted Gram cannot be positive definite for more than m columns");
  if (columns.empty()) return true;

  Matrix sub(a.m(), static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const Index c = columns[j];
    if (c < 0 || c >= a.n()) fail(ErrorCode::kShape, "column index out of range");
    sub.col(static_cast<Index>(j)) = a.entries.col(c);
  }
  Matrix gram = sub.transpose() * sub;
  gram.diagonal().array() -= lambda;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "eigendecomposition failed");
  return solver.eigenvalues()[0] > 0.0;
}

bool check_general_position(const SensingMatrix& a, int max_n) {
  const Index n = a.n();
  const Index m = a.m();
  if (n > max_n)
    fail(ErrorCode::kCapacity, "general-position check is exhaustive over 3^n sign patterns");

  constexpr double kTol = 1e-9;
  std::vector<int> sigma(static_cast<std::size_t>(n), 0);  // digits in {0,1,2} -> {0,+1,-1}
  Vector sum = Vector::Zero(m);
  std::uint64_t steps = 0;

  // Base-3 counter over all sign patterns, including the all-zero one.
  for (;;) {
    if ((++steps & 0xFFFu) == 0) {  // cap incremental drift
      sum.setZero();
      for (Index i = 0; i < n; ++i) {
        const int d = sigma[static_cast<std::size_t>(i)];
        if (d == 1) sum += a.entries.col(i);
        else if (d == 2) sum -= a.entries.col(i);
      }
    }
    for (Index j = 0; j < n; ++j) {
      // Skip the trivial pattern that selects only +-v_j itself.
      bool trivial = sigma[static_cast<std::size_t>(j)] != 0;
      if (trivial) {
        for (Index i = 0; i < n && trivial; ++i)
          if (i != j && sigma[static_cast<std::size_t>(i)] != 0) trivial = false;
      }
      if (trivial) continue;
      if ((sum - a.entries.col(j)).norm() <= kTol) return false;
      if ((sum + a.entries.col(j)).norm() <= kTol) return false;
    }

    // Increment the counter and update the running sum by the digit change.
    Index pos = 0;
    while (pos < n) {
      auto& d = sigma[static_cast<std::size_t>(pos)];
      if (d == 0) {         // 0 -> +1
        d = 1;
        sum += a.entries.col(pos);
        break;
      } else if (d == 1) {  // +1 -> -1
        d = 2;
        sum -= 2.0 * a.entries.col(pos);
        break;
      } else {              // -1 -> 0, carry
        d = 0;
        sum += a.entries.col(pos);
        ++pos;
      }
    }
    if (pos == n) return true;  // counter wrapped: all patterns visited
  }
}

ProbeOutcome probe_local_min(const ProblemInstance& p, double lambda, const ProbeConfig& cfg) {
  cfg.validate();
  if (!p.truth) fail(ErrorCode::kPrecondition, "probe requires a ground truth");

  const PenaltyParams penalty(lambda);
  const BinarySignal& truth = *p.truth;
  const BoxVector x_true(truth.values);
  const double base_cost = eval_cost(p, x_true, penalty);

  RandomStream rng(cfg.rng_seed);
  ProbeOutcome out;
  out.passed = true;
  out.worst_margin = std::numeric_limits<double>::infinity();

  Vector candidate(p.n());
  for (long long trial = 0; trial < cfg.trials; ++trial) {
    bool nonzero = false;
    for (Index i = 0; i < p.n(); ++i) {
      const double step = cfg.epsilon * rng.uniform01();
      if (step != 0.0) nonzero = true;
      candidate[i] = truth.values[i] == 1.0 ? 1.0 - step : step;
    }
    if (!nonzero) {  // measure-zero event; an empty increment proves nothing
      --trial;
      continue;
    }
    const double margin = eval_cost(p, BoxVector(candidate), penalty) - base_cost;
    if (margin < out.worst_margin) out.worst_margin = margin;
    if (!(margin > 0.0)) out.passed = false;
  }
  return out;
}

namespace {

// Shared 2^n sweep: visits all binary vectors in Gray-code order, maintaining
// A z - y incrementally, and hands (code, ones, residual) to the visitor. The
// residual is recomputed from scratch periodically to cap drift.
template <typename Visitor>
void gray_code_sweep(const ProblemInstance& p, Visitor&& visit) {
  const Index n = p.n();
  if (n > kMaxEnumerationN)
    fail(ErrorCode::kCapacity, "binary enumeration is limited to n <= 20");

  const Matrix& a = p.matrix.entries;
  const std::uint32_t total = 1u << n;
  std::uint32_t code = 0;  // bit i set <=> z_i = 1
  int ones = 0;
  Vector residual = -p.measurements;  // A 0 - y
  visit(code, ones, residual);

  for (std::uint32_t i = 1; i < total; ++i) {
    const int flip = std::countr_zero(i);
    code ^= (1u << flip);
    if (code & (1u << flip)) {
      residual += a.col(flip);
      ++ones;
    } else {
      residual -= a.col(flip);
      --ones;
    }
    if ((i & 0xFFFu) == 0) {
      Vector z(n);
      for (Index b = 0; b < n; ++b) z[b] = (code >> b) & 1u ? 1.0 : 0.0;
      residual = a * z - p.measurements;
    }
    visit(code, ones, residual);
  }
}

BinarySignal signal_from_code(Index n, std::uint32_t code) {
  Vector z(n);
  for (Index b = 0; b < n; ++b) z[b] = (code >> b) & 1u ? 1.0 : 0.0;
  return BinarySignal(std::move(z));
}

}  // namespace

BruteForceOutcome brute_force_binary_min(const ProblemInstance& p, double lambda) {
  const PenaltyParams penalty(lambda);

  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_code = 0;
  gray_code_sweep(p, [&](std::uint32_t code, int ones, const Vector& residual) {
    const double value = 0.5 * residual.squaredNorm() + lambda * 0.5 * ones;
    if (value < best || (value == best && code < best_code)) {
      best = value;
      best_code = code;
    }
  });

  BruteForceOutcome out;
  out.argmin = signal_from_code(p.n(), best_code);
  out.value = eval_cost(p, BoxVector(out.argmin.values), penalty);

  // Uniqueness is judged against the sweep's own values so the argmin always
  // counts itself.
  const double cutoff = best + 1e-12;
  long long within = 0;
  gray_code_sweep(p, [&](std::uint32_t, int ones, const Vector& residual) {
    const double value = 0.5 * residual.squaredNorm() + lambda * 0.5 * ones;
    if (value <= cutoff) ++within;
  });
  out.unique = within == 1;
  return out;
}

DescentOutcome descent_direction_check(const ProblemInstance& p, const BinarySignal& z,
                                       double lambda, double epsilon) {
  if (!p.truth) fail(ErrorCode::kPrecondition, "descent check requires a ground truth");
  if (z.size() != p.n()) fail(ErrorCode::kShape, "candidate length does not match");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    fail(ErrorCode::kDomain, "epsilon must lie in [0,1]");
  if (z.values == p.truth->values)
    fail(ErrorCode::kPrecondition, "candidate must differ from the ground truth");

  const PenaltyParams penalty(lambda);
  const Vector direction = z.values - p.truth->values;
  const BoxVector moved(z.values - epsilon * direction);

  DescentOutcome out;
  out.delta = eval_cost(p, moved, penalty) - eval_cost(p, BoxVector(z.values), penalty);
  out.decreases = out.delta < 0.0;
  return out;
}

double lambda_upper_bound(const ProblemInstance& p) {
  if (!p.truth) fail(ErrorCode::kPrecondition, "lambda bound requires a ground truth");

  std::uint32_t truth_code = 0;
  for (Index i = 0; i < p.n(); ++i)
    if (p.truth->values[i] == 1.0) truth_code |= (1u << i);

  const Vector truth_residual = p.matrix.entries * p.truth->values - p.measurements;

  double bound = std::numeric_limits<double>::infinity();
  gray_code_sweep(p, [&](std::uint32_t code, int, const Vector& residual) {
    if (code == truth_code) return;
    // A(z - x~) = (A z - y) - (A x~ - y); hamming distance = ||z - x~||^2
    const double num = (residual - truth_residual).squaredNorm();
    const double den = static_cast<double>(std::popcount(code ^ truth_code));
    const double ratio = num / den;
    if (ratio < bound) bound = ratio;
  });
  return bound;
}

}  // namespace bcs
