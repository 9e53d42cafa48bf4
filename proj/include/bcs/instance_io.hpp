#pragma once

#include <cstdint>
#include <string>

#include "bcs/types.hpp"

namespace bcs {

// Shortest-exact decimal formatting: 17 significant digits round-trip any
// IEEE double through strtod.
std::string format_double(double v);

// Plain-text instance format:
//   line 1: "n m k seed"   (k = truth sparsity, 0 when no truth is stored)
//   lines 2..m+1: rows of A, whitespace separated
//   next line: y
//   next line: truth as 0/1 entries (omitted when absent)
// known_k is a runtime flag and is not serialized.
std::string write_instance(const ProblemInstance& p);
ProblemInstance read_instance(const std::string& text);

void save_instance(const ProblemInstance& p, const std::string& path);
ProblemInstance load_instance(const std::string& path);

// FNV-1a over the bit patterns of n, m, k and all entries of A (row major),
// y, and the truth. Identifies the mathematical instance content.
std::uint64_t instance_hash(const ProblemInstance& p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bcs
