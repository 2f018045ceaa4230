#ifndef HEAVYTAIL_PARALLEL_HPP
#define HEAVYTAIL_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "heavytail/random.hpp"

namespace heavytail {

inline constexpr std::size_t kSampleBlockSize = 1u << 16;

/// Runs `fill(block_index, first_item, last_item, stream)` over fixed-size
/// blocks of [0, n_items). Block b always draws from stream (seed, base + b),
/// so the result is bit-identical for any thread count.
template <typename Fill>
void for_each_block(std::size_t n_items, std::uint64_t seed,
                    std::uint64_t stream_base, int threads, Fill&& fill) {
  const std::size_t n_blocks = (n_items + kSampleBlockSize - 1) / kSampleBlockSize;
  if (threads < 1) threads = 1;
  auto run_block = [&](std::size_t b) {
    const std::size_t first = b * kSampleBlockSize;
    const std::size_t last = std::min(first + kSampleBlockSize, n_items);
    RandomStream stream(seed, stream_base + b);
    fill(b, first, last, stream);
  };
  if (threads == 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        run_block(b);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace heavytail

#endif
