#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcs/model.hpp"
#include "bcs/reweight.hpp"
#include <limits>

#include "oracles.hpp"

using namespace bcs;

namespace {

RwConfig default_rw() { return RwConfig{4, 1e-2, AdmmConfig{}}; }

}  // namespace

TEST_CASE("rw started at the truth stays there") {
  // The truth is the exact stage minimizer; solving stages tightly keeps the
  // iterate within 1e-6 of it for any t_stop.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = oracle::random_instance(20, 10, 4, 2000 + seed);
    RwConfig cfg = default_rw();
    cfg.admm.residual_tolerance = 1e-16;
    cfg.admm.max_iterations = 100000;
    cfg.t_stop = 2 + static_cast<int>(seed % 3);
    const BoxVector x0(p.truth->values);
    const auto res = rw(p, cfg, x0);
    CHECK((res.estimate.values - p.truth->values).lpNorm<Eigen::Infinity>() < 1e-6);
    CHECK(res.per_stage_iterations.size() == static_cast<std::size_t>(cfg.t_stop));
  }
}

TEST_CASE("one rw stage from zero is the unit-weight box lasso") {
  auto p = oracle::random_instance(20, 10, 3, 2100);
  RwConfig cfg = default_rw();
  cfg.t_stop = 1;
  const auto staged = rw(p, cfg, BoxVector::zeros(20));
  const auto direct = solve_weighted_box_lasso(p, PenaltyParams(cfg.lambda), Vector::Ones(20),
                                               cfg.admm, Vector::Zero(20));
  CHECK(staged.estimate.values == direct.estimate);  // bit-identical
  CHECK(staged.total_admm_iterations == direct.iterations);
}

TEST_CASE("stage costs decrease monotonically") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = oracle::random_instance(30, 12, 4, 2200 + seed);
    RwConfig cfg = default_rw();
    cfg.admm.residual_tolerance = 1e-10;  // solve stages tightly
    const auto res = rw(p, cfg, BoxVector::zeros(30));
    const PenaltyParams penalty(cfg.lambda);
    double prev = eval_cost(p, BoxVector::zeros(30), penalty);
    for (double cost : res.stage_costs) {
      CHECK(cost <= prev + 1e-8);
      prev = cost;
    }
  }
}

TEST_CASE("rw recovers most Gaussian instances at comfortable m") {
  int exact = 0;
  const int total = 100;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    auto p = oracle::random_instance(100, 30, 5, 3000 + seed);
    const auto res = rw(p, default_rw(), BoxVector::zeros(100));
    const Metrics metrics = compute_metrics(res.estimate.values, *p.truth, 1e-4);
    if (metrics.exact) ++exact;
  }
  CHECK(exact > 50);  // majority; observed well above
}

TEST_CASE("candidate check") {
  auto p = oracle::random_instance(12, 6, 2, 2300);
  const double residual_tol = 1e-6 * (1.0 + p.measurements.squaredNorm());

  CHECK(check_candidate(BoxVector(p.truth->values), p, 1e-3, residual_tol));

  Vector half = Vector::Constant(12, 0.5);
  CHECK_FALSE(check_candidate(BoxVector(half), p, 1e-3, residual_tol));

  // Binary but inconsistent with the measurements.
  Vector wrong = Vector::Zero(12);
  wrong[p.truth->support[0] == 0 ? 1 : 0] = 1.0;
  CHECK_FALSE(check_candidate(BoxVector(wrong), p, 1e-3, residual_tol));
}

TEST_CASE("quantize") {
  Vector v(3);
  v << 0.9, 0.1, 0.5;
  const auto q = quantize(BoxVector(v));
  CHECK(q.values[0] == 1.0);
  CHECK(q.values[1] == 0.0);
  CHECK(q.values[2] == 1.0);  // tie rounds to 1

  Vector binary(4);
  binary << 1, 0, 0, 1;
  CHECK(quantize(BoxVector(binary)).values == binary);

  const auto below = quantize(BoxVector(Vector::Constant(5, 0.49)));
  CHECK(below.values.lpNorm<Eigen::Infinity>() == 0.0);

  // Real-valued estimates round to the nearest of {0,1}.
  Vector real(3);
  real << 3.7, -0.2, 0.51;
  const auto qr = quantize_real(real);
  CHECK(qr.values[0] == 1.0);
  CHECK(qr.values[1] == 0.0);
  CHECK(qr.values[2] == 1.0);
}

TEST_CASE("rwr with zero budget equals rw from zero") {
  auto p = oracle::random_instance(30, 12, 3, 2400);
  RwrConfig cfg{default_rw(), 0, 1e-3, 1e-6};
  RandomStream rng(1);
  const auto restarted = rwr(p, cfg, rng);
  const auto plain = rw(p, cfg.rw, BoxVector::zeros(30));
  CHECK(restarted.estimate.values == plain.estimate.values);
  CHECK(restarted.restarts_used == 0);
  CHECK(restarted.total_admm_iterations == plain.total_admm_iterations);
}

TEST_CASE("rwr returns immediately when the first attempt is accepted") {
  auto p = oracle::random_instance(40, 25, 3, 2500);  // easy regime
  RwrConfig cfg{default_rw(), 20, 1e-3, 1e-6};
  RandomStream rng(2);
  const auto res = rwr(p, cfg, rng);
  REQUIRE(res.accepted);
  CHECK(res.restarts_used == 0);
  const auto plain = rw(p, cfg.rw, BoxVector::zeros(40));
  CHECK(res.estimate.values == plain.estimate.values);
}

TEST_CASE("rwr accounting and determinism") {
  auto p = oracle::random_instance(30, 11, 5, 2600);  // hard enough to restart sometimes
  RwrConfig cfg{default_rw(), 5, 1e-3, 1e-6};

  RandomStream rng_a(77);
  const auto a = rwr(p, cfg, rng_a);
  RandomStream rng_b(77);
  const auto b = rwr(p, cfg, rng_b);

  CHECK(a.estimate.values == b.estimate.values);  // bit-identical
  CHECK(a.restarts_used == b.restarts_used);
  CHECK(a.total_admm_iterations == b.total_admm_iterations);

  long long sum = 0;
  for (int it : a.per_stage_iterations) sum += it;
  CHECK(sum == a.total_admm_iterations);
  CHECK(a.per_stage_iterations.size() == 4u * (1u + static_cast<unsigned>(a.restarts_used)));
}

TEST_CASE("accepted rwr results are exact recoveries") {
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto p = oracle::random_instance(30, 15, 3, 2700 + seed);
    RwrConfig cfg{default_rw(), 20, 1e-3, 1e-6};
    RandomStream rng(seed);
    const auto res = rwr(p, cfg, rng);
    if (!res.accepted) continue;
    ++accepted;
    const BinarySignal rounded = quantize(res.estimate);
    CHECK(rounded.values == p.truth->values);
    const Metrics metrics = compute_metrics(rounded.values, *p.truth, 1e-4);
    CHECK(metrics.rse == 0.0);
  }
  CHECK(accepted > 0);  // the property must actually fire
}

TEST_CASE("inner failures carry the attempt index") {
  auto p = oracle::random_instance(10, 5, 2, 2800);
  p.measurements[0] = std::numeric_limits<double>::quiet_NaN();  // poisons the ADMM iterates
  RwrConfig cfg{default_rw(), 3, 1e-3, 1e-6};
  RandomStream rng(3);
  try {
    rwr(p, cfg, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumerical);
    CHECK(std::string(e.what()).find("attempt 0") != std::string::npos);
  }
}
