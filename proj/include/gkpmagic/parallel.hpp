#pragma once

#include <cstddef>
#include <functional>

namespace gkpmagic {

// Worker count used by the FWHT j-loop and optimizer restarts. Defaults to
// the MAGIC_THREADS environment variable, else hardware concurrency.
int thread_count();
void set_thread_count(int threads);

// Runs body(index) for index in [0, count) across thread_count() workers.
// Each index is visited exactly once; work is split into contiguous blocks.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace gkpmagic
