#include "bcs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "bcs/instance_io.hpp"

namespace bcs {

const char* method_name(Method m) {
  switch (m) {
    case Method::kRw: return "RW";
    case Method::kRwr: return "RWR";
    case Method::kLasso: return "Lasso";
    case Method::kLassoQ: return "LassoQ";
    case Method::kBp: return "BP";
    case Method::kBpQ: return "BPQ";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "rw") return Method::kRw;
  if (lower == "rwr") return Method::kRwr;
  if (lower == "lasso") return Method::kLasso;
  if (lower == "lassoq") return Method::kLassoQ;
  if (lower == "bp") return Method::kBp;
  if (lower == "bpq") return Method::kBpQ;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (n < 1) fail(ErrorCode::kConfig, "n must be >= 1");
  if (k < 1) fail(ErrorCode::kConfig, "k must be >= 1");
  if (m_values.empty()) fail(ErrorCode::kConfig, "m_values must be non-empty");
  for (std::size_t i = 0; i + 1 < m_values.size(); ++i)
    if (m_values[i] >= m_values[i + 1])
      fail(ErrorCode::kConfig, "m_values must be strictly increasing");
  if (k > m_values.front())
    fail(ErrorCode::kConfig, "k must not exceed the smallest m");
  if (m_values.back() > n) fail(ErrorCode::kConfig, "m must not exceed n");
  if (runs < 1) fail(ErrorCode::kConfig, "runs must be >= 1");
  if (!(lambda > 0.0)) fail(ErrorCode::kConfig, "lambda must be positive");
  if (methods.empty()) fail(ErrorCode::kConfig, "method list must be non-empty");
  if (!(support_threshold >= 0.0)) fail(ErrorCode::kConfig, "support_threshold must be >= 0");
  rwr_config().validate();
}

ProblemInstance generate_instance(int n, int m, int k, RandomStream& rng) {
  if (n < 1 || m < 1) fail(ErrorCode::kPrecondition, "need n >= 1 and m >= 1");
  if (k < 0) fail(ErrorCode::kPrecondition, "k must be >= 0");
  if (k > m)
    fail(ErrorCode::kPrecondition,
         "sparsity k must not exceed the measurement count m");
  if (m > n) fail(ErrorCode::kPrecondition, "need m <= n");

  const double sigma = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = sigma * rng.normal();

  // Uniform size-k support via partial Fisher-Yates.
  std::vector<Index> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), Index{0});
  for (int t = 0; t < k; ++t) {
    const auto j = static_cast<std::size_t>(t) +
                   static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - t)));
    std::swap(indices[static_cast<std::size_t>(t)], indices[j]);
  }
  std::vector<Index> support(indices.begin(), indices.begin() + k);
  std::sort(support.begin(), support.end());

  BinarySignal truth = BinarySignal::from_support(n, support);
  Vector y = Vector::Zero(m);
  for (Index j : support) y += a.col(j);  // exact: y = A * truth

  return ProblemInstance(SensingMatrix(std::move(a)), std::move(y), std::move(truth));
}

Metrics compute_metrics(const Vector& estimate, const BinarySignal& truth,
                        double support_threshold) {
  const Index n = truth.size();
  const Index k = truth.sparsity();
  if (k < 1) fail(ErrorCode::kPrecondition, "RSE is undefined for an empty support");
  if (estimate.size() != n) fail(ErrorCode::kShape, "estimate length does not match truth");

  Metrics out;
  out.rse = (estimate - truth.values).squaredNorm() / static_cast<double>(k);

  long long fp = 0, fn = 0;
  for (Index i = 0; i < n; ++i) {
    const bool on_support = truth.values[i] == 1.0;
    const bool detected = std::abs(estimate[i]) > support_threshold;
    if (!on_support && detected) ++fp;
    if (on_support && !detected) ++fn;
  }
  out.fp_rate = n == k ? 0.0 : static_cast<double>(fp) / static_cast<double>(n - k);
  out.fn_rate = static_cast<double>(fn) / static_cast<double>(k);
  out.exact = out.rse < 1e-3 && fp == 0 && fn == 0;
  return out;
}

namespace {

// Fixed per-method seed tags keep streams independent of the method list.
std::uint64_t method_stream_tag(Method m) { return static_cast<std::uint64_t>(m) + 1; }

struct RunOutput {
  std::vector<MetricRecord> records;
};

MetricRecord failure_record(Method method, int m, bool known_k, int run,
                            std::uint64_t hash) {
  MetricRecord rec;
  rec.method = method;
  rec.m = m;
  rec.known_k = known_k;
  rec.run_index = run;
  rec.instance_hash = hash;
  rec.failed = true;
  rec.rse = std::numeric_limits<double>::infinity();
  rec.fp_rate = 1.0;
  rec.fn_rate = 1.0;
  rec.exact = false;
  return rec;
}

RunOutput execute_run(const ExperimentConfig& cfg, int m, int run) {
  const std::uint64_t run_seed = mix_seed(mix_seed(cfg.master_seed,
                                                   static_cast<std::uint64_t>(m)),
                                          static_cast<std::uint64_t>(run));
  RandomStream instance_rng(mix_seed(run_seed, 0));
  ProblemInstance base = generate_instance(cfg.n, m, cfg.k, instance_rng);
  const std::uint64_t hash = instance_hash(base);

  ProblemInstance solved = base;
  if (cfg.known_k) {
    solved.known_k = cfg.k;
    solved = augment_known_k(solved);
  }

  const BinarySignal& truth = *base.truth;
  const PenaltyParams penalty(cfg.lambda);

  bool want[6] = {};
  for (Method method : cfg.methods) want[static_cast<int>(method)] = true;

  RunOutput out;
  auto push = [&](Method method, const Vector& estimate, long long iterations) {
    MetricRecord rec;
    rec.method = method;
    rec.m = m;
    rec.known_k = cfg.known_k;
    rec.run_index = run;
    rec.instance_hash = hash;
    const Metrics metrics = compute_metrics(estimate, truth, cfg.support_threshold);
    rec.rse = metrics.rse;
    rec.fp_rate = metrics.fp_rate;
    rec.fn_rate = metrics.fn_rate;
    rec.exact = metrics.exact;
    rec.admm_iterations = iterations;
    out.records.push_back(rec);
  };

  if (want[static_cast<int>(Method::kRw)]) {
    try {
      const RecoveryResult res = rw(solved, cfg.rw_config(), BoxVector::zeros(cfg.n));
      push(Method::kRw, res.estimate.values, res.total_admm_iterations);
    } catch (const Error&) {
      out.records.push_back(failure_record(Method::kRw, m, cfg.known_k, run, hash));
    }
  }

  if (want[static_cast<int>(Method::kRwr)]) {
    RandomStream rwr_rng(mix_seed(run_seed, method_stream_tag(Method::kRwr)));
    try {
      const RecoveryResult res = rwr(solved, cfg.rwr_config(), rwr_rng);
      push(Method::kRwr, res.estimate.values, res.total_admm_iterations);
    } catch (const Error&) {
      out.records.push_back(failure_record(Method::kRwr, m, cfg.known_k, run, hash));
    }
  }

  if (want[static_cast<int>(Method::kLasso)] || want[static_cast<int>(Method::kLassoQ)]) {
    try {
      const SolverResult res = solve_lasso(solved, penalty, cfg.admm);
      if (want[static_cast<int>(Method::kLasso)])
        push(Method::kLasso, res.estimate, res.iterations);
      if (want[static_cast<int>(Method::kLassoQ)])
        push(Method::kLassoQ, quantize_real(res.estimate).values, res.iterations);
    } catch (const Error&) {
      if (want[static_cast<int>(Method::kLasso)])
        out.records.push_back(failure_record(Method::kLasso, m, cfg.known_k, run, hash));
      if (want[static_cast<int>(Method::kLassoQ)])
        out.records.push_back(failure_record(Method::kLassoQ, m, cfg.known_k, run, hash));
    }
  }

  if (want[static_cast<int>(Method::kBp)] || want[static_cast<int>(Method::kBpQ)]) {
    try {
      const SolverResult res = solve_basis_pursuit(solved, cfg.admm);
      if (want[static_cast<int>(Method::kBp)]) push(Method::kBp, res.estimate, res.iterations);
      if (want[static_cast<int>(Method::kBpQ)])
        push(Method::kBpQ, quantize_real(res.estimate).values, res.iterations);
    } catch (const Error&) {
      if (want[static_cast<int>(Method::kBp)])
        out.records.push_back(failure_record(Method::kBp, m, cfg.known_k, run, hash));
      if (want[static_cast<int>(Method::kBpQ)])
        out.records.push_back(failure_record(Method::kBpQ, m, cfg.known_k, run, hash));
    }
  }

  return out;
}

}  // namespace

std::vector<MetricRecord> run_benchmark(const ExperimentConfig& cfg, int jobs,
                                        const ProgressFn& progress) {
  cfg.validate();

  struct Task {
    int m;
    int run;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.m_values.size() * static_cast<std::size_t>(cfg.runs));
  for (int m : cfg.m_values)
    for (int run = 0; run < cfg.runs; ++run) tasks.push_back({m, run});

  std::vector<RunOutput> outputs(tasks.size());
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      outputs[i] = execute_run(cfg, tasks[i].m, tasks[i].run);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, tasks.size());
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<MetricRecord> records;
  records.reserve(tasks.size() * cfg.methods.size());
  for (const auto& out : outputs)
    records.insert(records.end(), out.records.begin(), out.records.end());

  std::sort(records.begin(), records.end(), [](const MetricRecord& a, const MetricRecord& b) {
    if (a.method != b.method) return static_cast<int>(a.method) < static_cast<int>(b.method);
    if (a.m != b.m) return a.m < b.m;
    return a.run_index < b.run_index;
  });
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<MetricRecord>& records) {
  if (records.empty()) fail(ErrorCode::kPrecondition, "nothing to aggregate");

  std::vector<MetricRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const MetricRecord& a, const MetricRecord& b) {
    if (a.method != b.method) return static_cast<int>(a.method) < static_cast<int>(b.method);
    if (a.m != b.m) return a.m < b.m;
    return a.known_k < b.known_k;
  });

  std::vector<AggregateRow> rows;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const MetricRecord& head = sorted[i];
    AggregateRow row;
    row.method = head.method;
    row.m = head.m;
    row.known_k = head.known_k;
    double rse = 0.0, fp = 0.0, fn = 0.0, exact = 0.0, iters = 0.0;
    while (i < sorted.size() && sorted[i].method == head.method && sorted[i].m == head.m &&
           sorted[i].known_k == head.known_k) {
      const MetricRecord& r = sorted[i];
      rse += r.rse;
      fp += r.fp_rate;
      fn += r.fn_rate;
      exact += r.exact ? 1.0 : 0.0;
      iters += static_cast<double>(r.admm_iterations);
      ++row.count;
      ++i;
    }
    const auto c = static_cast<double>(row.count);
    row.rse_mean = rse / c;
    row.fp_mean = fp / c;
    row.fn_mean = fn / c;
    row.exact_rate = exact / c;
    row.iters_mean = iters / c;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string raw_csv(const std::vector<MetricRecord>& records) {
  std::string out(kRawCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += method_name(r.method);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += r.known_k ? '1' : '0';
    out += ',';
    out += std::to_string(r.run_index);
    out += ',';
    out += format_double(r.rse);
    out += ',';
    out += format_double(r.fp_rate);
    out += ',';
    out += format_double(r.fn_rate);
    out += ',';
    out += r.exact ? '1' : '0';
    out += ',';
    out += std::to_string(r.admm_iterations);
    out += ',';
    out += hash_hex(r.instance_hash);
    out += '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::string out(kAggCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += method_name(r.method);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += r.known_k ? '1' : '0';
    out += ',';
    out += std::to_string(r.count);
    out += ',';
    out += format_double(r.rse_mean);
    out += ',';
    out += format_double(r.fp_mean);
    out += ',';
    out += format_double(r.fn_mean);
    out += ',';
    out += format_double(r.exact_rate);
    out += ',';
    out += format_double(r.iters_mean);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_csv_double(const std::string& field, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    fail(ErrorCode::kIo, "bad numeric field at line " + std::to_string(line_no));
  return v;
}

}  // namespace

std::vector<AggregateRow> parse_aggregate_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) fail(ErrorCode::kIo, "empty CSV");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kAggCsvHeader)
    fail(ErrorCode::kIo, "unexpected CSV header at line 1 (want \"" +
                             std::string(kAggCsvHeader) + "\")");

  std::vector<AggregateRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    bool blank = true;
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') {
        blank = false;
        break;
      }
    if (blank) continue;

    const auto fields = split_csv_line(line);
    if (fields.size() != 9)
      fail(ErrorCode::kIo, "expected 9 fields at line " + std::to_string(line_no));

    AggregateRow row;
    const auto method = parse_method(fields[0]);
    if (!method) fail(ErrorCode::kIo, "unknown method at line " + std::to_string(line_no));
    row.method = *method;
    row.m = static_cast<int>(parse_csv_double(fields[1], line_no));
    row.known_k = parse_csv_double(fields[2], line_no) != 0.0;
    row.count = static_cast<long long>(parse_csv_double(fields[3], line_no));
    row.rse_mean = parse_csv_double(fields[4], line_no);
    row.fp_mean = parse_csv_double(fields[5], line_no);
    row.fn_mean = parse_csv_double(fields[6], line_no);
    row.exact_rate = parse_csv_double(fields[7], line_no);
    row.iters_mean = parse_csv_double(fields[8], line_no);
    rows.push_back(row);
  }
  if (rows.empty()) fail(ErrorCode::kIo, "CSV contains no data rows");
  return rows;
}

}  // namespace bcs
