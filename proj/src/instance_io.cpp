#include "bcs/instance_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace bcs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_row(std::string& out, const double* data, Index count) {
  for (Index i = 0; i < count; ++i) {
    if (i) out += ' ';
    out += format_double(data[i]);
  }
  out += '\n';
}

std::vector<double> parse_numbers(const std::string& line, int line_no) {
  std::vector<double> out;
  const char* s = line.c_str();
  char* end = nullptr;
  while (*s) {
    while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
    if (!*s) break;
    const double v = std::strtod(s, &end);
    if (end == s)
      fail(ErrorCode::kIo, "instance parse error at line " + std::to_string(line_no));
    out.push_back(v);
    s = end;
  }
  return out;
}

}  // namespace

std::string write_instance(const ProblemInstance& p) {
  const Index m = p.m();
  const Index n = p.n();
  const Index k = p.truth ? p.truth->sparsity() : 0;

  std::string out;
  out.reserve(static_cast<std::size_t>((m + 2) * n * 20));
  out += std::to_string(n) + " " + std::to_string(m) + " " + std::to_string(k) + " " +
         std::to_string(p.seed) + "\n";

  std::vector<double> row(static_cast<std::size_t>(n));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = p.matrix.entries(i, j);
    append_row(out, row.data(), n);
  }
  append_row(out, p.measurements.data(), m);
  if (p.truth) {
    for (Index j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += p.truth->values[j] == 1.0 ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

ProblemInstance read_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      bool blank = true;
      for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') {
          blank = false;
          break;
        }
      if (!blank) return true;
    }
    if (required) fail(ErrorCode::kIo, "instance file truncated");
    return false;
  };

  next_line(true);
  long n = 0, m = 0, k = 0;
  unsigned long long seed = 0;
  if (std::sscanf(line.c_str(), "%ld %ld %ld %llu", &n, &m, &k, &seed) != 4 || n <= 0 ||
      m <= 0 || k < 0)
    fail(ErrorCode::kIo, "bad instance header at line 1");

  Matrix a(m, n);
  for (long i = 0; i < m; ++i) {
    next_line(true);
    const auto row = parse_numbers(line, line_no);
    if (row.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::kIo, "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(n) + " (line " +
                               std::to_string(line_no) + ")");
    for (long j = 0; j < n; ++j) a(i, j) = row[static_cast<std::size_t>(j)];
  }

  next_line(true);
  const auto y_values = parse_numbers(line, line_no);
  if (y_values.size() != static_cast<std::size_t>(m))
    fail(ErrorCode::kIo, "measurement line has " + std::to_string(y_values.size()) +
                             " entries, expected " + std::to_string(m));
  Vector y(m);
  for (long i = 0; i < m; ++i) y[i] = y_values[static_cast<std::size_t>(i)];

  std::optional<BinarySignal> truth;
  if (next_line(false)) {
    const auto t_values = parse_numbers(line, line_no);
    if (t_values.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::kIo, "truth line has " + std::to_string(t_values.size()) +
                               " entries, expected " + std::to_string(n));
    Vector t(n);
    for (long j = 0; j < n; ++j) t[j] = t_values[static_cast<std::size_t>(j)];
    truth = BinarySignal(std::move(t));
    if (truth->sparsity() != k)
      fail(ErrorCode::kIo, "header sparsity " + std::to_string(k) +
                               " does not match truth sparsity " +
                               std::to_string(truth->sparsity()));
  }

  return ProblemInstance(SensingMatrix(std::move(a)), std::move(y), std::move(truth),
                         std::nullopt, seed);
}

void save_instance(const ProblemInstance& p, const std::string& path) {
  write_text_file(path, write_instance(p));
}

ProblemInstance load_instance(const std::string& path) {
  return read_instance(read_text_file(path));
}

namespace {

struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ULL;

  void feed_bytes(const void* data, std::size_t count) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < count; ++i) {
      state ^= bytes[i];
      state *= 0x100000001b3ULL;
    }
  }
  void feed(std::uint64_t v) { feed_bytes(&v, sizeof v); }
  void feed(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    feed(bits);
  }
};

}  // namespace

std::uint64_t instance_hash(const ProblemInstance& p) {
  Fnv1a h;
  h.feed(static_cast<std::uint64_t>(p.n()));
  h.feed(static_cast<std::uint64_t>(p.m()));
  h.feed(static_cast<std::uint64_t>(p.truth ? p.truth->sparsity() : 0));
  for (Index i = 0; i < p.m(); ++i)
    for (Index j = 0; j < p.n(); ++j) h.feed(p.matrix.entries(i, j));
  for (Index i = 0; i < p.m(); ++i) h.feed(p.measurements[i]);
  if (p.truth)
    for (Index j = 0; j < p.n(); ++j) h.feed(p.truth->values[j]);
  return h.state;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace bcs
