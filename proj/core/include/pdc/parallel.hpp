#pragma once

#include <cstddef>
#include <functional>

namespace pdc {

// Number of worker threads: hardware concurrency, capped by the PDC_THREADS
// environment variable when set.
int thread_count();

// Run fn(i) for i in [0, n) across the worker threads. Work is split into
// contiguous blocks so results are deterministic regardless of scheduling;
// fn must not touch shared mutable state outside its own index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}
