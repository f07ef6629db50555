#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace sqlife::detail {

inline unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work_items, 1)));
}

/// Calls fn(i) for i in [0, count), splitting contiguous chunks across threads.
/// Each index is visited exactly once; fn must only write state owned by i.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned n = resolve_threads(threads, count);
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(n);
  const std::size_t chunk = (count + n - 1) / n;
  for (unsigned t = 0; t < n; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace sqlife::detail
