#pragma once

#include <cstddef>
#include <functional>

namespace docforge {

/// Runs fn(0..count) on up to `budget` worker threads. budget <= 1 runs
/// inline. fn must be safe to call concurrently for distinct indices.
void parallel_for(std::size_t count, int budget, const std::function<void(std::size_t)>& fn);

/// Thread budget resolution: explicit value > DOCFORGE_NUM_THREADS >
/// OMP_NUM_THREADS > 1.
int resolve_thread_budget(int explicit_value = 0);

}  // namespace docforge
