#pragma once

#include <cstddef>
#include <functional>

namespace lamb {

void set_thread_count(int n);
int thread_count();

// Splits [begin, end) into contiguous chunks, one per worker. Each index is
// visited exactly once; callers write to disjoint outputs per index.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace lamb
