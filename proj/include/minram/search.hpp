#pragma once

// Deterministic least-prime scans over arithmetic progressions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "minram/arith.hpp"

namespace minram {

struct ScanOptions {
  std::uint64_t limit;  // largest candidate examined
  unsigned jobs = 1;
};

// 10^7, or MINRAM_LIMIT when set to a positive integer.
std::uint64_t default_scan_limit();
ScanOptions default_scan_options();

// Least prime q <= limit with q = 1 (mod step) accepted by pred. With
// jobs > 1 the range is scanned in chunks by worker threads; the result is
// still the least accepted prime. pred must be thread-safe. Throws
// SearchLimitError on exhaustion.
std::uint64_t least_prime_1_mod(std::uint64_t step, const std::function<bool(std::uint64_t)>& pred,
                                const ScanOptions& opts, const std::string& what);

}  // namespace minram
