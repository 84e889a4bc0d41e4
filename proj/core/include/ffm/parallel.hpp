#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ffm {

/// Splits [0, total) into `workers` contiguous ranges and runs fn(begin,
/// end, worker) on each, joining before return. workers <= 1 runs inline.
/// Partial results indexed by worker and combined in worker order stay
/// deterministic for a fixed worker count.
inline void parallel_ranges(std::uint64_t total, int workers,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  if (workers <= 1 || total < 2) {
    fn(0, total, 0);
    return;
  }
  const auto w = static_cast<std::uint64_t>(workers);
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::uint64_t chunk = (total + w - 1) / w;
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t b = i * chunk;
    const std::uint64_t e = std::min(total, b + chunk);
    if (b >= e) break;
    threads.emplace_back(fn, b, e, static_cast<int>(i));
  }
  for (auto& t : threads) t.join();
}

}  // namespace ffm
