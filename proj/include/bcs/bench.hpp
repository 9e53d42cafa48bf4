#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcs/reweight.hpp"
#include "bcs/rng.hpp"
#include "bcs/solvers.hpp"
#include "bcs/types.hpp"

namespace bcs {

enum class Method { kRw = 0, kRwr, kLasso, kLassoQ, kBp, kBpQ };

inline constexpr Method kAllMethods[] = {Method::kRw,     Method::kRwr, Method::kLasso,
                                         Method::kLassoQ, Method::kBp,  Method::kBpQ};

const char* method_name(Method m);                       // canonical CSV name
std::optional<Method> parse_method(const std::string&);  // case-insensitive

struct ExperimentConfig {
  int n = 100;
  int k = 5;
  std::vector<int> m_values = {10, 15, 20, 25, 30, 35, 40};
  int runs = 500;
  double lambda = 1e-2;
  std::vector<Method> methods = {Method::kRw,     Method::kRwr, Method::kLasso,
                                 Method::kLassoQ, Method::kBp,  Method::kBpQ};
  bool known_k = false;
  std::uint64_t master_seed = 1;

  int t_stop = 4;
  int max_restarts = 20;
  AdmmConfig admm;
  double binary_tolerance = 1e-3;
  double candidate_residual_tolerance = 1e-6;
  double support_threshold = 1e-4;

  void validate() const;
  RwConfig rw_config() const { return RwConfig{t_stop, lambda, admm}; }
  RwrConfig rwr_config() const {
    return RwrConfig{rw_config(), max_restarts, binary_tolerance, candidate_residual_tolerance};
  }
};

struct MetricRecord {
  Method method = Method::kRw;
  int m = 0;
  bool known_k = false;
  double rse = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  bool exact = false;
  long long admm_iterations = 0;
  int run_index = 0;
  std::uint64_t instance_hash = 0;
  bool failed = false;  // solver numerical failure; serialized as rse = inf
};

struct Metrics {
  double rse = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  bool exact = false;
};

// Gaussian instance: A_ij ~ N(0, 1/m) drawn row by row, support drawn by
// partial Fisher-Yates over [0,n), y = sum of the support columns.
ProblemInstance generate_instance(int n, int m, int k, RandomStream& rng);

// RSE, false positive/negative rates against the ground truth. Off-support
// entries larger than support_threshold in magnitude count as false
// positives (normalized by n-k); support entries at or below it count as
// false negatives (normalized by k). Exact recovery is RSE < 1e-3 with both
// rates zero.
Metrics compute_metrics(const Vector& estimate, const BinarySignal& truth,
                        double support_threshold);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Full Monte Carlo sweep. Every run seeds its own generator from
// (master_seed, m, run), so records do not depend on the method list order or
// on the worker count. Records come back sorted by (method, m, run).
std::vector<MetricRecord> run_benchmark(const ExperimentConfig& cfg, int jobs = 1,
                                        const ProgressFn& progress = nullptr);

struct AggregateRow {
  Method method = Method::kRw;
  int m = 0;
  bool known_k = false;
  long long count = 0;
  double rse_mean = 0.0;
  double fp_mean = 0.0;
  double fn_mean = 0.0;
  double exact_rate = 0.0;
  double iters_mean = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<MetricRecord>& records);

inline constexpr const char* kRawCsvHeader =
    "method,m,known_k,run,rse,fp_rate,fn_rate,exact,admm_iterations,instance_hash";
inline constexpr const char* kAggCsvHeader =
    "method,m,known_k,count,rse_mean,fp_mean,fn_mean,exact_rate,iters_mean";

std::string raw_csv(const std::vector<MetricRecord>& records);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

// Parses an aggregated CSV; errors cite the offending line number.
std::vector<AggregateRow> parse_aggregate_csv(const std::string& text);

}  // namespace bcs
