// End-to-end checks of the command-line surface: exit codes, file outputs,
// determinism. Each command runs in a scratch directory via std::system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = BCS_CLI_PATH;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / "bcs_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const Scratch& s, const std::string& args) {
  const std::string out_file = s.path("stdout.txt");
  const std::string err_file = s.path("stderr.txt");
  const std::string command = cli + " " + args + " >" + out_file + " 2>" + err_file;
  const int status = std::system(command.c_str());

  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("generate: deterministic output and precondition exit code") {
  Scratch s;
  const std::string inst = s.path("inst.txt");
  const auto first = run(s, "generate --n 40 --m 12 --k 3 --seed 5 --out " + inst);
  CHECK(first.exit_code == 0);
  CHECK(first.out.find("hash=") != std::string::npos);
  const std::string bytes = slurp_file(inst);
  CHECK(bytes.rfind("40 12 3 5", 0) == 0);

  const auto second = run(s, "generate --n 40 --m 12 --k 3 --seed 5 --out " + inst);
  CHECK(second.exit_code == 0);
  CHECK(slurp_file(inst) == bytes);

  // k > m violates the recoverability precondition.
  const auto bad = run(s, "generate --n 40 --m 12 --k 30 --seed 5 --out " + inst);
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("k") != std::string::npos);

  // Unwritable output path.
  const auto io = run(s, "generate --n 10 --m 5 --k 2 --seed 1 --out /nonexistent/dir/x.txt");
  CHECK(io.exit_code == 2);
}

TEST_CASE("solve: methods, reports, and exit codes") {
  Scratch s;
  const std::string inst = s.path("inst.txt");
  REQUIRE(run(s, "generate --n 30 --m 18 --k 3 --seed 9 --out " + inst).exit_code == 0);

  const auto rwr = run(s, "solve --in " + inst +
                              " --method rwr --lambda 1e-2 --tstop 4 --restarts 20 --out " +
                              s.path("est.txt"));
  CHECK(rwr.exit_code == 0);
  CHECK(rwr.out.find("method=RWR") != std::string::npos);
  CHECK(rwr.out.find("accepted=") != std::string::npos);
  CHECK(rwr.out.find("rse=") != std::string::npos);
  CHECK(fs::exists(s.path("est.txt")));

  const auto bp = run(s, "solve --in " + inst + " --method bp");
  CHECK(bp.exit_code == 0);
  CHECK(bp.out.find("method=BP") != std::string::npos);
  CHECK(bp.out.find("m=18") != std::string::npos);

  // Known-k wiring shows up as the augmented row count.
  const auto aug = run(s, "solve --in " + inst + " --method lasso --known-k");
  CHECK(aug.exit_code == 0);
  CHECK(aug.out.find("m=19") != std::string::npos);

  const auto bad_method = run(s, "solve --in " + inst + " --method sparsenet");
  CHECK(bad_method.exit_code == 1);

  const auto missing = run(s, "solve --in " + s.path("nope.txt") + " --method bp");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("solve: square system inverts exactly") {
  Scratch s;
  const std::string inst = s.path("square.txt");
  REQUIRE(run(s, "generate --n 8 --m 8 --k 2 --seed 3 --out " + inst).exit_code == 0);
  const auto bp = run(s, "solve --in " + inst + " --method bp --tol 1e-14 --max-iter 100000 " +
                             "--out " + s.path("est.txt"));
  CHECK(bp.exit_code == 0);
  CHECK(bp.out.find("rse=") != std::string::npos);
  // Unique feasible point = truth, so the recovery is exact.
  CHECK(bp.out.find("exact=1") != std::string::npos);
}

TEST_CASE("bench: csv outputs, determinism, config errors") {
  Scratch s;
  const std::string cfg = s.path("exp.cfg");
  {
    std::ofstream out(cfg);
    out << "n = 24\nk = 2\nm_values = 8, 12\nruns = 3\nlambda = 1e-2\n"
        << "methods = rw, bp\nmaster_seed = 11\n";
  }
  const std::string raw = s.path("raw.csv");
  const std::string agg = s.path("agg.csv");

  const auto first =
      run(s, "bench --config " + cfg + " --out-raw " + raw + " --out-agg " + agg);
  CHECK(first.exit_code == 0);
  const std::string raw_bytes = slurp_file(raw);
  CHECK(raw_bytes.rfind("method,m,known_k,run,rse,fp_rate,fn_rate,exact,admm_iterations,"
                        "instance_hash",
                        0) == 0);
  CHECK(slurp_file(agg).rfind("method,m,known_k,count,rse_mean,fp_mean,fn_mean,exact_rate,"
                              "iters_mean",
                              0) == 0);

  // Rerun (with a worker pool) byte-identical.
  const auto second = run(s, "bench --config " + cfg + " --jobs 2 --out-raw " + raw +
                                 " --out-agg " + agg);
  CHECK(second.exit_code == 0);
  CHECK(slurp_file(raw) == raw_bytes);

  // Flag overrides beat the config file.
  const auto fewer = run(s, "bench --config " + cfg + " --runs 1 --out-raw " + raw +
                                " --out-agg " + agg);
  CHECK(fewer.exit_code == 0);
  CHECK(slurp_file(raw) != raw_bytes);

  {
    std::ofstream out(cfg, std::ios::app);
    out << "mystery = 1\n";
  }
  const auto invalid = run(s, "bench --config " + cfg + " --out-raw " + raw + " --out-agg " +
                                  agg);
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.err.find("mystery") != std::string::npos);
}

TEST_CASE("verify: capacity skips and pass lines") {
  Scratch s;
  const auto small = run(s, "verify --random 10 6 2 42 --lambda 1e-6 --trials 500");
  CHECK(small.exit_code == 0);
  CHECK(small.out.find("general-position (3^n exhaustive):") != std::string::npos);
  CHECK(small.out.find("local-minimum probe") != std::string::npos);
  CHECK(small.out.find("exhaustive binary minimum: PASS") != std::string::npos);
  CHECK(small.out.find("wrong-candidate descent") != std::string::npos);
  CHECK(small.out.find("PASS") != std::string::npos);

  const auto big = run(s, "verify --random 25 12 3 1 --lambda 1e-2 --trials 200");
  CHECK(big.exit_code == 0);
  CHECK(big.out.find("general-position: SKIPPED") != std::string::npos);
  CHECK(big.out.find("exhaustive binary minimum: SKIPPED") != std::string::npos);
  CHECK(big.out.find("local-minimum probe") != std::string::npos);

  const auto neither = run(s, "verify --lambda 1e-2");
  CHECK(neither.exit_code == 1);
}

TEST_CASE("plot: one file per metric, errors for bad input") {
  Scratch s;
  const std::string agg = s.path("agg.csv");
  {
    std::ofstream out(agg);
    out << "method,m,known_k,count,rse_mean,fp_mean,fn_mean,exact_rate,iters_mean\n"
        << "RW,10,0,5,0.5,0.1,0.2,0.4,120\n"
        << "RW,20,0,5,0.01,0,0,1,80\n"
        << "BP,10,0,5,0.9,0.3,0.3,0.1,60\n"
        << "BP,20,0,5,0.2,0.05,0.05,0.8,50\n";
  }

  const auto one = run(s, "plot --agg " + agg + " --metric exact --out-dir " + s.path("plots"));
  CHECK(one.exit_code == 0);
  CHECK(fs::exists(s.path("plots") + "/exact.svg"));
  CHECK_FALSE(fs::exists(s.path("plots") + "/rse.svg"));

  const auto all = run(s, "plot --agg " + agg + " --out-dir " + s.path("plots"));
  CHECK(all.exit_code == 0);
  for (const char* name : {"rse.svg", "exact.svg", "fp.svg", "fn.svg", "iters.svg"}) {
    const std::string path = s.path("plots") + "/" + name;
    REQUIRE(fs::exists(path));
    const std::string svg = slurp_file(path);
    CHECK(svg.find("<svg") != std::string::npos);
  }

  const auto bad_metric = run(s, "plot --agg " + agg + " --metric volume");
  CHECK(bad_metric.exit_code == 1);

  {
    std::ofstream out(agg, std::ios::app);
    out << "BP,30,0\n";  // wrong field count
  }
  const auto malformed = run(s, "plot --agg " + agg + " --out-dir " + s.path("plots"));
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.err.find("line 6") != std::string::npos);

  const auto missing = run(s, "plot --agg " + s.path("nope.csv"));
  CHECK(missing.exit_code == 2);
}

TEST_CASE("usage errors exit with 1") {
  Scratch s;
  CHECK(run(s, "").exit_code == 1);              // subcommand required
  CHECK(run(s, "frobnicate").exit_code == 1);    // unknown subcommand
  CHECK(run(s, "generate --n 10").exit_code == 1);  // missing required --out
  CHECK(run(s, "generate --bogus 1 --out x").exit_code == 1);
  CHECK(run(s, "--help").exit_code == 0);
  CHECK(run(s, "solve --help").exit_code == 0);
}
