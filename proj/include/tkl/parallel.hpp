#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tkl {

// Worker count from TKL_PARALLEL, falling back to the hardware count.
inline int default_parallelism() {
  if (const char* env = std::getenv("TKL_PARALLEL")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(std::min(hw, 64u)) : 1;
}

// Splits [0, total) into contiguous chunks, one per worker. fn receives
// (worker_index, begin, end); workers write only to disjoint state, so
// results can be merged deterministically in worker order afterwards.
template <typename Fn>
void parallel_chunks(std::uint64_t total, int parallelism, Fn&& fn) {
  if (parallelism < 1) parallelism = default_parallelism();
  const int workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(parallelism),
                                                               total ? total : 1));
  if (workers <= 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(total, chunk * static_cast<std::uint64_t>(w));
    const std::uint64_t end = std::min(total, begin + chunk);
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tkl
