#include "bcs/config.hpp"

#include <cstdlib>
#include <sstream>

#include "bcs/instance_io.hpp"

namespace bcs {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

long long to_int(const ConfigEntry& e) {
  char* end = nullptr;
  const long long v = std::strtoll(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0')
    fail(ErrorCode::kConfig, "key '" + e.key + "': expected an integer, got '" + e.value + "'");
  return v;
}

std::uint64_t to_u64(const ConfigEntry& e) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0')
    fail(ErrorCode::kConfig, "key '" + e.key + "': expected an integer, got '" + e.value + "'");
  return v;
}

double to_double(const ConfigEntry& e) {
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0')
    fail(ErrorCode::kConfig, "key '" + e.key + "': expected a number, got '" + e.value + "'");
  return v;
}

bool to_bool(const ConfigEntry& e) {
  if (e.value == "1" || e.value == "true") return true;
  if (e.value == "0" || e.value == "false") return false;
  fail(ErrorCode::kConfig, "key '" + e.key + "': expected 0/1/true/false, got '" + e.value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(trim(cur));
  return items;
}

}  // namespace

std::vector<ConfigEntry> parse_flat_config(const std::string& text) {
  std::vector<ConfigEntry> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
    ConfigEntry entry;
    entry.key = trim(stripped.substr(0, eq));
    entry.value = trim(stripped.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty())
      fail(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": empty key");
    entries.push_back(std::move(entry));
  }
  return entries;
}

void apply_experiment_entry(ExperimentConfig& cfg, const ConfigEntry& e) {
  if (e.key == "n") {
    cfg.n = static_cast<int>(to_int(e));
  } else if (e.key == "k") {
    cfg.k = static_cast<int>(to_int(e));
  } else if (e.key == "m_values") {
    std::vector<int> values;
    for (const auto& item : split_list(e.value)) {
      ConfigEntry sub{e.key, item, e.line};
      values.push_back(static_cast<int>(to_int(sub)));
    }
    cfg.m_values = std::move(values);
  } else if (e.key == "runs") {
    cfg.runs = static_cast<int>(to_int(e));
  } else if (e.key == "lambda") {
    cfg.lambda = to_double(e);
  } else if (e.key == "methods") {
    std::vector<Method> methods;
    for (const auto& item : split_list(e.value)) {
      const auto method = parse_method(item);
      if (!method)
        fail(ErrorCode::kConfig, "key 'methods': unknown method '" + item + "'");
      methods.push_back(*method);
    }
    cfg.methods = std::move(methods);
  } else if (e.key == "known_k") {
    cfg.known_k = to_bool(e);
  } else if (e.key == "master_seed") {
    cfg.master_seed = to_u64(e);
  } else if (e.key == "t_stop") {
    cfg.t_stop = static_cast<int>(to_int(e));
  } else if (e.key == "max_restarts") {
    cfg.max_restarts = static_cast<int>(to_int(e));
  } else if (e.key == "rho") {
    cfg.admm.rho = to_double(e);
  } else if (e.key == "admm_tolerance") {
    cfg.admm.residual_tolerance = to_double(e);
  } else if (e.key == "max_iterations") {
    cfg.admm.max_iterations = static_cast<int>(to_int(e));
  } else if (e.key == "binary_tolerance") {
    cfg.binary_tolerance = to_double(e);
  } else if (e.key == "candidate_residual_tolerance") {
    cfg.candidate_residual_tolerance = to_double(e);
  } else if (e.key == "support_threshold") {
    cfg.support_threshold = to_double(e);
  } else {
    fail(ErrorCode::kConfig, "unknown config key '" + e.key + "'");
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  ExperimentConfig cfg;
  for (const auto& entry : parse_flat_config(read_text_file(path)))
    apply_experiment_entry(cfg, entry);
  cfg.validate();
  return cfg;
}

}  // namespace bcs
