#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace subseg {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; fn must only write state owned by its index.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
}

}  // namespace subseg
