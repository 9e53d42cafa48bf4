#pragma once

#include <string>
#include <vector>

#include "bcs/bench.hpp"

namespace bcs {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Flat `key = value` format with `#` comments and blank lines.
std::vector<ConfigEntry> parse_flat_config(const std::string& text);

// Applies one entry onto the experiment config; unknown keys and malformed
// values raise kConfig errors naming the key.
void apply_experiment_entry(ExperimentConfig& cfg, const ConfigEntry& entry);

// Reference defaults overridden by the entries of the given file.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace bcs
