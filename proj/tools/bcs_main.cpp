#include <CLI11.hpp>

#include <Eigen/Eigenvalues>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "bcs/bench.hpp"
#include "bcs/config.hpp"
#include "bcs/instance_io.hpp"
#include "bcs/model.hpp"
#include "bcs/reweight.hpp"
#include "bcs/rng.hpp"
#include "bcs/solvers.hpp"
#include "bcs/svg.hpp"
#include "bcs/verify.hpp"

namespace {

using namespace bcs;

// Exit codes: 0 success/skip, 1 usage/config, 2 precondition, 3 numerical.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return 1;
    case ErrorCode::kNumerical: return 3;
    default: return 2;
  }
}

int default_jobs() {
  if (const char* env = std::getenv("BCS_JOBS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  int n = 100, m = 25, k = 5;
  std::uint64_t seed = 1;
  std::string out;
};

void run_generate(const GenerateArgs& args) {
  RandomStream rng(args.seed);
  ProblemInstance p = generate_instance(args.n, args.m, args.k, rng);
  p.seed = args.seed;
  save_instance(p, args.out);
  std::printf("wrote %s (n=%d m=%d k=%d seed=%" PRIu64 ") hash=%s\n", args.out.c_str(),
              args.n, args.m, args.k, args.seed, hash_hex(instance_hash(p)).c_str());
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string in;
  std::string method = "rwr";
  double lambda = 1e-2;
  int t_stop = 4;
  int restarts = 20;
  bool known_k = false;
  double rho = 1.0;
  double tol = 1e-6;
  int max_iter = 10000;
  std::string out;
};

void write_estimate(const std::string& path, const Vector& estimate) {
  std::string text;
  for (Index i = 0; i < estimate.size(); ++i) {
    text += format_double(estimate[i]);
    text += '\n';
  }
  write_text_file(path, text);
}

void run_solve(const SolveArgs& args) {
  ProblemInstance p = load_instance(args.in);
  if (args.known_k) {
    if (!p.truth)
      fail(ErrorCode::kPrecondition, "--known-k needs a ground truth in the instance file");
    p.known_k = static_cast<int>(p.truth->sparsity());
    p = augment_known_k(p);
  }

  AdmmConfig admm{args.rho, args.tol, args.max_iter};
  const PenaltyParams penalty(args.lambda);
  const auto method = parse_method(args.method);
  if (!method) fail(ErrorCode::kConfig, "unknown method '" + args.method + "'");

  Vector estimate;
  long long iterations = 0;
  bool converged = true;
  std::string extras;

  switch (*method) {
    case Method::kRw: {
      const RwConfig cfg{args.t_stop, args.lambda, admm};
      const RecoveryResult res = rw(p, cfg, BoxVector::zeros(p.n()));
      estimate = res.estimate.values;
      iterations = res.total_admm_iterations;
      const bool accepted = check_candidate(res.estimate, p, 1e-3,
                                            1e-6 * (1.0 + p.measurements.squaredNorm()));
      extras = std::string(" accepted=") + (accepted ? "1" : "0");
      break;
    }
    case Method::kRwr: {
      const RwrConfig cfg{RwConfig{args.t_stop, args.lambda, admm}, args.restarts, 1e-3, 1e-6};
      RandomStream rng(mix_seed(p.seed, 2));  // restart stream tied to the instance seed
      const RecoveryResult res = rwr(p, cfg, rng);
      estimate = res.estimate.values;
      iterations = res.total_admm_iterations;
      extras = std::string(" accepted=") + (res.accepted ? "1" : "0") +
               " restarts=" + std::to_string(res.restarts_used);
      break;
    }
    case Method::kLasso:
    case Method::kLassoQ: {
      const SolverResult res = solve_lasso(p, penalty, admm);
      estimate = *method == Method::kLassoQ ? quantize_real(res.estimate).values : res.estimate;
      iterations = res.iterations;
      converged = res.converged;
      break;
    }
    case Method::kBp:
    case Method::kBpQ: {
      const SolverResult res = solve_basis_pursuit(p, admm);
      estimate = *method == Method::kBpQ ? quantize_real(res.estimate).values : res.estimate;
      iterations = res.iterations;
      converged = res.converged;
      break;
    }
  }

  std::string report = std::string("method=") + method_name(*method) +
                       " m=" + std::to_string(p.m()) + " iterations=" +
                       std::to_string(iterations) + " converged=" + (converged ? "1" : "0") +
                       extras;
  if (p.truth && p.truth->sparsity() > 0) {
    const Metrics metrics = compute_metrics(estimate, *p.truth, 1e-4);
    report += " rse=" + format_double(metrics.rse) + " exact=" + (metrics.exact ? "1" : "0");
  }
  std::printf("%s\n", report.c_str());
  if (!args.out.empty()) write_estimate(args.out, estimate);
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string config;
  std::string out_raw = "raw.csv";
  std::string out_agg = "agg.csv";
  int jobs = 0;
  int runs = -1;
  std::uint64_t master_seed = 0;
  bool master_seed_set = false;
  int known_k = -1;
};

void run_bench(const BenchArgs& args) {
  ExperimentConfig cfg;
  if (!args.config.empty()) cfg = load_experiment_config(args.config);
  if (args.runs >= 0) cfg.runs = args.runs;
  if (args.master_seed_set) cfg.master_seed = args.master_seed;
  if (args.known_k >= 0) cfg.known_k = args.known_k != 0;
  cfg.validate();

  const int jobs = args.jobs >= 1 ? args.jobs : default_jobs();
  const std::size_t total_tasks = cfg.m_values.size() * static_cast<std::size_t>(cfg.runs);
  const std::size_t stride = std::max<std::size_t>(1, total_tasks / 100);

  const auto records = run_benchmark(cfg, jobs, [&](std::size_t done, std::size_t total) {
    if (done % stride == 0 || done == total)
      std::fprintf(stderr, "\r%zu/%zu runs", done, total);
    if (done == total) std::fprintf(stderr, "\n");
  });

  const auto agg = aggregate(records);
  write_text_file(args.out_raw, raw_csv(records));
  write_text_file(args.out_agg, aggregate_csv(agg));

  std::printf("%-7s %4s %7s %6s %12s %8s %8s %7s %10s\n", "method", "m", "known_k", "count",
              "rse", "fp", "fn", "exact", "iters");
  for (const auto& row : agg)
    std::printf("%-7s %4d %7d %6lld %12.4g %8.4g %8.4g %7.3f %10.1f\n",
                method_name(row.method), row.m, row.known_k ? 1 : 0, row.count, row.rse_mean,
                row.fp_mean, row.fn_mean, row.exact_rate, row.iters_mean);
  std::printf("raw: %s\nagg: %s\n", args.out_raw.c_str(), args.out_agg.c_str());
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string in;
  std::vector<std::uint64_t> random;  // n m k seed
  double lambda = 1e-2;
  double epsilon = 1e-3;
  long long trials = 10000;
};

void run_verify(const VerifyArgs& args) {
  ProblemInstance p;
  std::uint64_t seed = 0;
  if (!args.in.empty()) {
    p = load_instance(args.in);
    seed = p.seed;
  } else if (args.random.size() == 4) {
    seed = args.random[3];
    RandomStream rng(seed);
    p = generate_instance(static_cast<int>(args.random[0]), static_cast<int>(args.random[1]),
                          static_cast<int>(args.random[2]), rng);
    p.seed = seed;
  } else {
    fail(ErrorCode::kConfig, "provide either --in FILE or --random n m k seed");
  }

  const auto n = p.n();
  const auto m = p.m();
  std::printf("instance: n=%lld m=%lld k=%lld lambda=%s hash=%s\n",
              static_cast<long long>(n), static_cast<long long>(m),
              static_cast<long long>(p.truth ? p.truth->sparsity() : 0),
              format_double(args.lambda).c_str(), hash_hex(instance_hash(p)).c_str());

  // Positivity of sampled size-m subset Grams. Square m x m Gaussian
  // submatrices can be very ill conditioned, so also report the largest
  // lambda the sampled sets would tolerate.
  {
    RandomStream rng(mix_seed(seed, 0xA));
    const int sets = 50;
    bool all = true;
    double min_gram_eig = std::numeric_limits<double>::infinity();
    for (int s = 0; s < sets; ++s) {
      std::vector<Index> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), Index{0});
      for (Index t = 0; t < m; ++t) {
        const auto j = static_cast<std::size_t>(t) + static_cast<std::size_t>(rng.below(
                           static_cast<std::uint64_t>(n - t)));
        std::swap(idx[static_cast<std::size_t>(t)], idx[j]);
      }
      idx.resize(static_cast<std::size_t>(m));
      if (!check_subset_gram_positive(p.matrix, args.lambda, idx)) all = false;
      // Smallest Gram eigenvalue of the subset = largest lambda it tolerates.
      Matrix sub(m, m);
      for (Index c = 0; c < m; ++c)
        sub.col(c) = p.matrix.entries.col(idx[static_cast<std::size_t>(c)]);
      Eigen::SelfAdjointEigenSolver<Matrix> es(sub.transpose() * sub,
                                               Eigen::EigenvaluesOnly);
      min_gram_eig = std::min(min_gram_eig, es.eigenvalues()[0]);
    }
    std::printf("subset-gram positivity (%d sampled size-%lld column sets): %s (holds for lambda < %s)\n",
                sets, static_cast<long long>(m), all ? "PASS" : "FAIL",
                format_double(min_gram_eig).c_str());
  }

  // General position of the columns, exhaustive.
  if (n <= kMaxGeneralPositionN) {
    const bool ok = check_general_position(p.matrix);
    std::printf("general-position (3^n exhaustive): %s\n", ok ? "PASS" : "FAIL");
  } else {
    std::printf("general-position: SKIPPED (n=%lld exceeds %d)\n", static_cast<long long>(n),
                kMaxGeneralPositionN);
  }

  // Enumerated bound on lambda for the recovery guarantees.
  double bound = -1.0;
  if (p.truth && n <= kMaxEnumerationN) {
    bound = lambda_upper_bound(p);
    std::printf("lambda-bound (enumerated): %s; lambda below bound: %s\n",
                format_double(bound).c_str(), args.lambda < bound ? "YES" : "NO");
  } else {
    std::printf("lambda-bound: SKIPPED (%s)\n",
                !p.truth ? "no ground truth" : "n exceeds enumeration capacity");
  }

  // Randomized local-minimum probe around the truth.
  if (p.truth) {
    const ProbeConfig cfg{args.epsilon, args.trials, mix_seed(seed, 0xB)};
    const ProbeOutcome probe = probe_local_min(p, args.lambda, cfg);
    std::printf("local-minimum probe (%lld trials, eps=%s): %s (worst margin %s)\n", args.trials,
                format_double(args.epsilon).c_str(), probe.passed ? "PASS" : "FAIL",
                format_double(probe.worst_margin).c_str());
  } else {
    std::printf("local-minimum probe: SKIPPED (no ground truth)\n");
  }

  // Exhaustive binary minimum.
  if (p.truth && n <= kMaxEnumerationN) {
    const BruteForceOutcome bf = brute_force_binary_min(p, args.lambda);
    const bool match = bf.argmin.values == p.truth->values;
    std::printf("exhaustive binary minimum: %s (value %s, unique %s)\n",
                match && bf.unique ? "PASS" : "FAIL", format_double(bf.value).c_str(),
                bf.unique ? "yes" : "no");
  } else {
    std::printf("exhaustive binary minimum: SKIPPED (%s)\n",
                !p.truth ? "no ground truth" : "n exceeds enumeration capacity");
  }

  // Descent from random wrong binary candidates.
  if (p.truth) {
    RandomStream rng(mix_seed(seed, 0xC));
    const int candidates = 50;
    const double eps = 1e-2;
    int decreasing = 0;
    for (int c = 0; c < candidates; ++c) {
      Vector z(n);
      do {
        for (Index i = 0; i < n; ++i) z[i] = rng.uniform01() < 0.5 ? 0.0 : 1.0;
      } while (z == p.truth->values);
      const DescentOutcome d = descent_direction_check(p, BinarySignal(z), args.lambda, eps);
      if (d.decreases) ++decreasing;
    }
    std::printf("wrong-candidate descent (%d random z, eps=%s): %s (%d/%d decrease)\n", candidates,
                format_double(eps).c_str(), decreasing == candidates ? "PASS" : "FAIL",
                decreasing, candidates);
  } else {
    std::printf("wrong-candidate descent: SKIPPED (no ground truth)\n");
  }
}

// -------------------------------------------------------------------- plot

struct PlotArgs {
  std::string agg;
  std::string metric = "all";
  std::string out_dir = ".";
  bool log_rse = false;
};

void run_plot(const PlotArgs& args) {
  std::vector<AggregateRow> rows;
  try {
    rows = parse_aggregate_csv(read_text_file(args.agg));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo && !std::filesystem::exists(args.agg)) throw;
    fail(ErrorCode::kConfig, std::string("malformed CSV: ") + e.what());
  }

  std::vector<PlotMetric> metrics;
  if (args.metric == "all") {
    metrics.assign(std::begin(kAllPlotMetrics), std::end(kAllPlotMetrics));
  } else {
    const auto metric = parse_plot_metric(args.metric);
    if (!metric) fail(ErrorCode::kConfig, "unknown metric '" + args.metric + "'");
    metrics.push_back(*metric);
  }

  std::filesystem::create_directories(args.out_dir);
  for (PlotMetric metric : metrics) {
    const bool log_y = args.log_rse && metric == PlotMetric::kRse;
    const std::string path =
        (std::filesystem::path(args.out_dir) / (std::string(plot_metric_name(metric)) + ".svg"))
            .string();
    write_text_file(path, render_curves(rows, metric, log_y));
    std::printf("wrote %s\n", path.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bcs - sparse binary signal recovery toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Generate a random Gaussian instance");
  cmd_gen->add_option("--n", gen.n, "signal length");
  cmd_gen->add_option("--m", gen.m, "number of measurements");
  cmd_gen->add_option("--k", gen.k, "sparsity of the ground truth");
  cmd_gen->add_option("--seed", gen.seed, "generator seed");
  cmd_gen->add_option("--out", gen.out, "output instance file")->required();

  SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "Recover a signal from an instance file");
  cmd_solve->add_option("--in", solve.in, "instance file")->required();
  cmd_solve->add_option("--method", solve.method, "rw|rwr|lasso|lassoq|bp|bpq")
      ->check(CLI::IsMember({"rw", "rwr", "lasso", "lassoq", "bp", "bpq"}));
  cmd_solve->add_option("--lambda", solve.lambda, "penalty weight (default 1e-2)");
  cmd_solve->add_option("--tstop", solve.t_stop, "reweighting stages (default 4)");
  cmd_solve->add_option("--restarts", solve.restarts, "restart budget for rwr (default 20)");
  cmd_solve->add_flag("--known-k", solve.known_k, "append the sum constraint row");
  cmd_solve->add_option("--rho", solve.rho, "ADMM rho (implementation default 1.0)");
  cmd_solve->add_option("--tol", solve.tol, "ADMM residual tolerance (default 1e-6)");
  cmd_solve->add_option("--max-iter", solve.max_iter,
                        "ADMM iteration cap (implementation default 10000)");
  cmd_solve->add_option("--out", solve.out, "write the estimate here");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run a Monte Carlo sweep");
  cmd_bench->add_option("--config", bench.config, "flat key=value experiment config");
  cmd_bench->add_option("--out-raw", bench.out_raw, "raw records CSV (default raw.csv)");
  cmd_bench->add_option("--out-agg", bench.out_agg, "aggregated CSV (default agg.csv)");
  cmd_bench->add_option("--jobs", bench.jobs, "worker threads (default $BCS_JOBS or 1)");
  cmd_bench->add_option("--runs", bench.runs, "override runs");
  auto* seed_opt = cmd_bench->add_option("--master-seed", bench.master_seed, "override seed");
  cmd_bench->add_option("--known-k", bench.known_k, "override known_k (0/1)");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Check the theory on one instance");
  auto* in_opt = cmd_verify->add_option("--in", verify.in, "instance file");
  cmd_verify->add_option("--random", verify.random, "n m k seed")->expected(4)->excludes(in_opt);
  cmd_verify->add_option("--lambda", verify.lambda, "penalty weight (default 1e-2)");
  cmd_verify->add_option("--epsilon", verify.epsilon, "probe perturbation size (default 1e-3)");
  cmd_verify->add_option("--trials", verify.trials, "probe trials (default 10000)");

  PlotArgs plot;
  auto* cmd_plot = app.add_subcommand("plot", "Render SVG curves from an aggregated CSV");
  cmd_plot->add_option("--agg", plot.agg, "aggregated CSV")->required();
  cmd_plot->add_option("--metric", plot.metric, "rse|exact|fp|fn|iters|all (default all)");
  cmd_plot->add_option("--out-dir", plot.out_dir, "output directory (default .)");
  cmd_plot->add_flag("--log", plot.log_rse, "log-scale the rse panel");

  try {
    app.parse(argc, argv);
    if (*cmd_gen) run_generate(gen);
    if (*cmd_solve) run_solve(solve);
    if (*cmd_bench) {
      bench.master_seed_set = seed_opt->count() > 0;
      run_bench(bench);
    }
    if (*cmd_verify) run_verify(verify);
    if (*cmd_plot) run_plot(plot);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const bcs::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
