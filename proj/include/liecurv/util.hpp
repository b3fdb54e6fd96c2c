#pragma once

#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace liecurv {

/// Shortest decimal with the given number of significant digits.
inline std::string format_significant(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// Worker count: LIECURV_THREADS if set (0 and 1 both mean serial),
/// otherwise hardware concurrency capped at 8.
inline unsigned thread_count() {
  if (const char* env = std::getenv("LIECURV_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0) return v <= 1 ? 1u : static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 8 ? 8u : hw;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n) and returns the
/// per-chunk results ordered by chunk index, so any fold over them is
/// independent of thread scheduling.
template <typename R, typename Fn>
std::vector<R> chunked_map(std::size_t n, Fn fn) {
  unsigned workers = thread_count();
  if (n == 0) return {};
  if (workers <= 1 || n < 2 * workers) return {fn(std::size_t{0}, n)};

  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<R> results;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t begin = 0; begin < n; begin += chunk)
    ranges.emplace_back(begin, begin + chunk < n ? begin + chunk : n);
  results.resize(ranges.size());

  std::vector<std::thread> pool;
  pool.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i)
    pool.emplace_back([&, i] { results[i] = fn(ranges[i].first, ranges[i].second); });
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace liecurv
