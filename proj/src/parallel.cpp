#include "lamb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "lamb/errors.hpp"

namespace lamb {
namespace {

std::atomic<int> g_threads{1};

}  // namespace

void set_thread_count(int n) {
  if (n < 1) throw ValidationError("thread count must be >= 1");
  g_threads = n;
}

int thread_count() { return g_threads; }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
  if (end <= begin) return;
  const std::size_t n = end - begin;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(g_threads), n);
  if (workers <= 1) {
    for (std::size_t k = begin; k < end; ++k) body(k);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + n * w / workers;
    const std::size_t hi = begin + n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t k = lo; k < hi; ++k) body(k);
    });
  }
}

}  // namespace lamb
