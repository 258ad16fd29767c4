#include "minram/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <vector>

#include "minram/errors.hpp"

namespace minram {

std::uint64_t default_scan_limit() {
  if (const char* env = std::getenv("MINRAM_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

ScanOptions default_scan_options() { return {default_scan_limit(), 1}; }

namespace {

constexpr std::uint64_t kChunk = 4096;  // candidates per chunk

std::optional<std::uint64_t> scan_chunk(std::uint64_t first_k, std::uint64_t step, std::uint64_t limit,
                                        const std::function<bool(std::uint64_t)>& pred) {
  for (std::uint64_t k = first_k; k < first_k + kChunk; ++k) {
    std::uint64_t q = 1 + k * step;
    if (q > limit) return std::nullopt;
    if (is_prime(q) && pred(q)) return q;
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t least_prime_1_mod(std::uint64_t step, const std::function<bool(std::uint64_t)>& pred,
                                const ScanOptions& opts, const std::string& what) {
  if (step == 0) throw DomainError("least_prime_1_mod: step must be positive");
  const unsigned jobs = std::max(1u, opts.jobs);
  const std::uint64_t kmax = opts.limit < 1 ? 0 : (opts.limit - 1) / step;
  for (std::uint64_t base = 1; base <= kmax; base += kChunk * jobs) {
    if (jobs == 1) {
      if (auto q = scan_chunk(base, step, opts.limit, pred)) return *q;
      continue;
    }
    std::vector<std::future<std::optional<std::uint64_t>>> round;
    for (unsigned j = 0; j < jobs; ++j) {
      std::uint64_t first = base + j * kChunk;
      if (first > kmax) break;
      round.push_back(std::async(std::launch::async, scan_chunk, first, step, opts.limit, std::cref(pred)));
    }
    std::optional<std::uint64_t> best;
    for (auto& f : round) {
      auto r = f.get();
      if (r && !best) best = r;  // chunks are in ascending order
    }
    if (best) return *best;
  }
  throw SearchLimitError("no prime found for " + what, std::to_string(opts.limit));
}

}  // namespace minram
