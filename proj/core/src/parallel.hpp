#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace fdstc::detail {

// Splits [0, total) into contiguous chunks, one per worker; fn(begin, end, worker).
template <class Fn>
void parallel_chunks(std::uint64_t total, int workers, Fn&& fn) {
  const auto w = static_cast<std::uint64_t>(std::max(1, workers));
  const std::uint64_t used = std::max<std::uint64_t>(1, std::min(w, total));
  if (used == 1) {
    fn(std::uint64_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(used);
  for (std::uint64_t i = 0; i < used; ++i) {
    const std::uint64_t begin = total * i / used;
    const std::uint64_t end = total * (i + 1) / used;
    threads.emplace_back([&, begin, end, i] {
      try {
        fn(begin, end, static_cast<int>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fdstc::detail
