#include "readout/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "readout/error.hpp"

namespace readout {

std::uint64_t sequence_count(std::size_t alphabet, int length) {
  std::uint64_t count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / alphabet)
      return std::numeric_limits<std::uint64_t>::max();
    count *= alphabet;
  }
  return count;
}

void check_budget(std::size_t alphabet, int length, std::uint64_t max_sequences) {
  if (sequence_count(alphabet, length) <= max_sequences) return;
  std::string limit;
  if (alphabet == 2) {
    int max_n = 0;
    while (sequence_count(2, max_n + 1) <= max_sequences) ++max_n;
    limit = "binary enumeration requires N <= " + std::to_string(max_n);
  } else {
    limit = "enumeration requires alphabet^N <= " + std::to_string(max_sequences);
  }
  throw BudgetError("enumeration budget exceeded: " + std::to_string(alphabet) + "^" +
                    std::to_string(length) + " sequences; " + limit);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace readout
