// Test-side reference implementations. These deliberately share no code with
// the solvers they check: plain first-order iterations and direct
// enumeration, run long enough to serve as ground truth on small instances.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

#include "bcs/bench.hpp"
#include "bcs/model.hpp"
#include "bcs/rng.hpp"
#include "bcs/types.hpp"

namespace oracle {

using bcs::Index;
using bcs::Matrix;
using bcs::Vector;

inline bcs::ProblemInstance random_instance(int n, int m, int k, std::uint64_t seed) {
  bcs::RandomStream rng(seed);
  return bcs::generate_instance(n, m, k, rng);
}

// Central finite differences of the cost functional.
inline Vector fd_gradient(const bcs::ProblemInstance& p, const Vector& x, double lambda,
                          double step = 1e-6) {
  const bcs::PenaltyParams penalty(lambda);
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Vector hi = x, lo = x;
    hi[i] += step;
    lo[i] -= step;
    g[i] = (bcs::eval_cost(p, bcs::BoxVector(hi), penalty) -
            bcs::eval_cost(p, bcs::BoxVector(lo), penalty)) /
           (2.0 * step);
  }
  return g;
}

inline double spectral_norm_sq(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.transpose() * a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Projected gradient on the box with step 1/L for the weighted problem
// 1/2||y-Ax||^2 + lambda w.x, x in [0,1]^n.
inline Vector projected_gradient_box(const bcs::ProblemInstance& p, double lambda,
                                     const Vector& w, long long iterations) {
  const Matrix& a = p.matrix.entries;
  const double step = 1.0 / spectral_norm_sq(a);
  Vector x = Vector::Zero(p.n());
  for (long long it = 0; it < iterations; ++it) {
    const Vector grad = a.transpose() * (a * x - p.measurements) + lambda * w;
    x = (x - step * grad).cwiseMax(0.0).cwiseMin(1.0);
  }
  return x;
}

inline double weighted_box_objective(const bcs::ProblemInstance& p, double lambda,
                                     const Vector& w, const Vector& x) {
  return 0.5 * (p.measurements - p.matrix.entries * x).squaredNorm() + lambda * w.dot(x);
}

// ISTA with step 1/L for the lasso.
inline Vector ista(const bcs::ProblemInstance& p, double lambda, long long iterations) {
  const Matrix& a = p.matrix.entries;
  const double step = 1.0 / spectral_norm_sq(a);
  const double thresh = lambda * step;
  Vector x = Vector::Zero(p.n());
  for (long long it = 0; it < iterations; ++it) {
    Vector v = x - step * (a.transpose() * (a * x - p.measurements));
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] > thresh)
        v[i] -= thresh;
      else if (v[i] < -thresh)
        v[i] += thresh;
      else
        v[i] = 0.0;
    }
    x = std::move(v);
  }
  return x;
}

inline double lasso_objective(const bcs::ProblemInstance& p, double lambda, const Vector& x) {
  return 0.5 * (p.measurements - p.matrix.entries * x).squaredNorm() +
         lambda * x.lpNorm<1>();
}

// Feasibility-projected subgradient for basis pursuit with geometrically
// decaying steps; the l1 norm over an affine set has a sharp minimum, so the
// decay schedule converges fast. Tracks the best feasible iterate.
inline Vector projected_subgradient_bp(const bcs::ProblemInstance& p,
                                       long long iterations = 200000) {
  const Matrix& a = p.matrix.entries;
  const Eigen::LLT<Matrix> gram(a * a.transpose());
  auto project = [&](const Vector& v) -> Vector {
    return v - a.transpose() * gram.solve(a * v - p.measurements);
  };

  Vector x = project(Vector::Zero(p.n()));  // least-norm feasible point
  Vector best = x;
  double best_l1 = x.lpNorm<1>();
  const double alpha0 = std::max(1e-3, x.cwiseAbs().maxCoeff());
  const long long stage = 2000;

  for (long long it = 0; it < iterations; ++it) {
    const double alpha =
        alpha0 * std::pow(0.85, static_cast<double>(it / stage));
    Vector g(x.size());
    for (Index i = 0; i < x.size(); ++i) g[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
    x = project(x - alpha * g);
    const double l1 = x.lpNorm<1>();
    if (l1 < best_l1) {
      best_l1 = l1;
      best = x;
    }
  }
  return best;
}

// Exhaustive l1 minimum over the affine set {Ax = y} via basic solutions
// (LP vertices): every size-m column subset with invertible A_T yields the
// candidate x_T = A_T^{-1} y. Returns the best vertex.
inline Vector lp_vertex_l1_min(const bcs::ProblemInstance& p) {
  const Index n = p.n();
  const Index m = p.m();
  std::vector<Index> comb(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;

  Vector best;
  double best_l1 = std::numeric_limits<double>::infinity();
  for (;;) {
    Matrix sub(m, m);
    for (Index c = 0; c < m; ++c)
      sub.col(c) = p.matrix.entries.col(comb[static_cast<std::size_t>(c)]);
    Eigen::FullPivLU<Matrix> lu(sub);
    if (lu.isInvertible()) {
      const Vector coeffs = lu.solve(p.measurements);
      Vector x = Vector::Zero(n);
      for (Index c = 0; c < m; ++c) x[comb[static_cast<std::size_t>(c)]] = coeffs[c];
      const double l1 = x.lpNorm<1>();
      if (l1 < best_l1 - 1e-14) {
        best_l1 = l1;
        best = x;
      }
    }
    // next combination
    Index i = m - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < m; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace oracle
