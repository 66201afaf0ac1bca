#include "docforge/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace docforge {

void parallel_for(std::size_t count, int budget, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, budget <= 1 ? 1 : static_cast<std::size_t>(budget));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

int resolve_thread_budget(int explicit_value) {
  if (explicit_value >= 1) return explicit_value;
  for (const char* var : {"DOCFORGE_NUM_THREADS", "OMP_NUM_THREADS"}) {
    if (const char* value = std::getenv(var)) {
      try {
        int parsed = std::stoi(value);
        if (parsed >= 1) return parsed;
      } catch (const std::exception&) {
      }
    }
  }
  return 1;
}

}  // namespace docforge
