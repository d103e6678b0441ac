#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace judrs {

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries depend only on `total`, never on the worker
// count, so per-chunk results can be reduced in chunk order to give
// bit-identical output for any number of workers.
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned workers, std::uint64_t chunk_size,
                     Fn&& fn) {
  if (total == 0) return;
  const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  if (workers <= 1 || n_chunks == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c)
      fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, n_chunks));
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

} // namespace judrs
